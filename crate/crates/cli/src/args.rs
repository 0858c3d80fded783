use clap::{Args, Parser, Subcommand, ValueEnum};

/// Graph products, exponential graphs and arc-shift digraphs.
///
/// Graph inputs are a file path, `-` for standard input, a catalog id
/// (heawood, petersen, w5, grotzsch) or a family shorthand (K4, C5, P3, E2).
/// Digraph inputs are a file path, `-`, or `K<n>` for the complete digraph.
#[derive(Parser, Debug)]
#[command(name = "graphprod", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Largest exponential graph (number of maps) that may be materialised.
    #[arg(long, global = true)]
    pub max_exp_vertices: Option<u128>,
    /// Largest number of map pairs whose adjacency may be evaluated.
    #[arg(long, global = true)]
    pub max_exp_pairs: Option<u128>,
    /// Largest graph handed to the fractional-chromatic LP.
    #[arg(long, global = true)]
    pub max_lp_vertices: Option<usize>,
    /// Show and read vertex and colour numbers starting at 1. Graph and
    /// digraph serialisations stay 0-based.
    #[arg(long, global = true)]
    pub one_based: bool,
    /// Worker threads.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a graph.
    #[command(subcommand)]
    Gen(Gen),
    /// Generate or convert a digraph.
    #[command(subcommand)]
    Dgen(Dgen),
    /// Compute an exact invariant.
    Invariant {
        #[command(subcommand)]
        which: Invariant,
    },
    /// Search for a homomorphism G -> H.
    Hom { g: String, h: String },
    /// Exponential graphs and the blow-up maps.
    #[command(subcommand)]
    Exp(Exp),
    /// Arc-shift operator and its colouring transforms.
    #[command(subcommand)]
    Shift(Shift),
    /// Run verification suites.
    #[command(subcommand)]
    Verify(Verify),
}

#[derive(Subcommand, Debug)]
pub enum Gen {
    /// A catalog graph.
    Named {
        id: String,
    },
    Complete {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    /// k-subsets of {0..m-1}, adjacent when disjoint.
    Kneser {
        m: usize,
        k: usize,
    },
    /// Circular clique K_{p/q}.
    Circ {
        p: usize,
        q: usize,
    },
    /// Replace every vertex by a q-clique.
    Blowup {
        input: String,
        q: usize,
    },
    /// Categorical product.
    Product {
        g: String,
        h: String,
    },
    /// Add a loop at every vertex.
    Loops {
        input: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum Dgen {
    Complete {
        n: usize,
    },
    /// Validate and re-emit a digraph.
    Parse {
        input: String,
    },
    Reverse {
        input: String,
    },
    /// Underlying undirected graph.
    Underline {
        input: String,
    },
    /// Digraph product.
    Product {
        d1: String,
        d2: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum Invariant {
    /// Chromatic number.
    Chi {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Fractional chromatic number (exact rational).
    Chif {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Independence number.
    Alpha {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Clique number.
    Omega {
        #[arg(default_value = "-")]
        input: String,
    },
    Girth {
        #[arg(default_value = "-")]
        input: String,
    },
    /// BFS distances from a vertex.
    Dist {
        v: usize,
        #[arg(default_value = "-")]
        input: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum Exp {
    /// Build K_c^G explicitly.
    Materialize {
        input: String,
        #[arg(long)]
        c: usize,
    },
    /// Decide adjacency of two maps (comma-separated values).
    Adjacent {
        input: String,
        #[arg(long)]
        c: usize,
        #[arg(long, value_delimiter = ',')]
        f: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        g: Vec<usize>,
    },
    /// The map mu_{v,t} over G[K_q] with palette 4q+2.
    Mu {
        input: String,
        #[arg(long, default_value_t = 0)]
        v: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        t: usize,
    },
    /// The simple map theta over G[K_q]; b and t default to 2q+1 and 2q.
    Theta {
        input: String,
        #[arg(long, default_value_t = 0)]
        v: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        b: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
    },
    /// Check that the maps mu_{v,t} form a clique.
    VerifyMuClique {
        input: String,
        #[arg(long, default_value_t = 0)]
        v: usize,
        #[arg(long)]
        q: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum Shift {
    /// Build the arc-shift digraph.
    Build {
        input: String,
        /// Precede the output with `# index: tail -> head` comment lines.
        #[arg(long)]
        labels: bool,
    },
    /// Out-arc colour sets from a colouring of the arc-shift.
    Down {
        input: String,
        /// JSON `{"colors": [...], "k": k}` or whitespace-separated colours.
        #[arg(long)]
        coloring: String,
    },
    /// Colouring of the arc-shift from an equal-size set colouring.
    Up {
        input: String,
        /// JSON set colouring, or one line of whitespace-separated colours per vertex.
        #[arg(long)]
        sets: String,
        /// Palette size; defaults to one more than the largest colour.
        #[arg(long)]
        k: Option<usize>,
    },
    /// The explicit 3-colouring of the double arc-shift of K4.
    Schelp,
    /// Compare the arc-shift of products and reverses with products and reverses of arc-shifts.
    Functoriality { d1: String, d2: String },
    /// Chromatic bounds between a digraph and its arc-shift.
    Bounds { input: String },
    /// chi(u D1 x u D2) against chi(D1 x D2) * chi(D1 x D2^-1).
    Chain { d1: String, d2: String },
}

#[derive(Subcommand, Debug)]
pub enum Verify {
    /// Run one suite: shitov, exponential, arc-shift, products, fractional or all.
    Suite {
        name: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Report per-claim wall-clock times. Without it the output is
        /// byte-identical across reruns.
        #[arg(long)]
        timing: bool,
    },
}
