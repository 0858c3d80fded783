mod args;
mod io;

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use graphprod::arcshift::{
    arc_shift, bound_chain_instance, coloring_down, coloring_up, double_shift_k4,
    functoriality_check, lemma_rel_bounds_check, schelp_check, schelp_coloring,
};
use graphprod::exponential::{
    adjacency_witness, default_theta_colors, materialize_exponential, shitov_mu, shitov_theta,
    verify_mu_clique, BlowupExpMap, BlowupExpMapRecord, ExpCaps, ExpContext,
};
use graphprod::graph::{
    add_loops, blowup, circular_clique, complete_digraph, complete_graph, cycle, digraph_product,
    distances, kneser, tensor_product,
};
use graphprod::harness::{run_suite, SuiteConfig};
use graphprod::solvers::{
    find_homomorphism, fractional_chromatic_capped, girth, max_clique, max_independent_set,
    optimal_coloring, DEFAULT_MAX_LP_VERTICES,
};
use graphprod::{catalog, Coloring};
use serde_json::json;

use args::{Cli, Command, Dgen, Exp, Format, Gen, Global, Invariant, Shift, Verify};
use io::{
    digraph_output, emit, graph_output, load_digraph, load_graph, parse_coloring, parse_sets,
    report_output, usage, CliError, CliResult, Output,
};

struct Ctx {
    fmt: Format,
    base: usize,
    caps: ExpCaps,
    max_lp: usize,
    jobs: Option<usize>,
}

impl Ctx {
    fn new(g: &Global) -> CliResult<Self> {
        if g.jobs == Some(0) {
            return Err(usage("--jobs must be at least 1"));
        }
        let defaults = ExpCaps::default();
        Ok(Ctx {
            fmt: g.format,
            base: usize::from(g.one_based),
            caps: ExpCaps {
                max_vertices: g.max_exp_vertices.unwrap_or(defaults.max_vertices),
                max_pairs: g.max_exp_pairs.unwrap_or(defaults.max_pairs),
            },
            max_lp: g.max_lp_vertices.unwrap_or(DEFAULT_MAX_LP_VERTICES),
            jobs: g.jobs,
        })
    }

    /// A user-supplied index in display numbering, converted to storage.
    fn index(&self, what: &str, v: usize) -> CliResult<usize> {
        v.checked_sub(self.base)
            .ok_or_else(|| usage(format!("{what} {v} is below the first index {}", self.base)))
    }

    fn indices(&self, what: &str, vs: &[usize]) -> CliResult<Vec<usize>> {
        vs.iter().map(|&v| self.index(what, v)).collect()
    }

    fn show(&self, v: usize) -> usize {
        v + self.base
    }

    fn report(&self, text: String, json: impl serde::Serialize) -> CliResult<Output> {
        report_output(self.fmt, text, json)
    }

    fn coloring_text(&self, col: &Coloring) -> String {
        col.colors
            .iter()
            .enumerate()
            .fold(String::new(), |mut out, (v, &c)| {
                let _ = writeln!(out, "{}: {}", self.show(v), self.show(c));
                out
            })
    }
}

fn run_gen(cx: &Ctx, cmd: Gen) -> CliResult<Output> {
    let g = match cmd {
        Gen::Named { id } => catalog::named(&id)?,
        Gen::Complete { n } => complete_graph(n)?,
        Gen::Cycle { n } => cycle(n)?,
        Gen::Kneser { m, k } => kneser(m, k)?,
        Gen::Circ { p, q } => circular_clique(p, q)?,
        Gen::Blowup { input, q } => blowup(&load_graph(&input)?, q)?,
        Gen::Product { g, h } => tensor_product(&load_graph(&g)?, &load_graph(&h)?),
        Gen::Loops { input } => add_loops(&load_graph(&input)?),
    };
    Ok(graph_output(&g, cx.fmt))
}

fn run_dgen(cx: &Ctx, cmd: Dgen) -> CliResult<Output> {
    match cmd {
        Dgen::Complete { n } => Ok(digraph_output(&complete_digraph(n)?, cx.fmt)),
        Dgen::Parse { input } => Ok(digraph_output(&load_digraph(&input)?, cx.fmt)),
        Dgen::Reverse { input } => Ok(digraph_output(&load_digraph(&input)?.reverse(), cx.fmt)),
        Dgen::Underline { input } => Ok(graph_output(&load_digraph(&input)?.underline(), cx.fmt)),
        Dgen::Product { d1, d2 } => {
            let p = digraph_product(&load_digraph(&d1)?, &load_digraph(&d2)?);
            Ok(digraph_output(&p, cx.fmt))
        }
    }
}

fn run_invariant(cx: &Ctx, cmd: Invariant) -> CliResult<Output> {
    match cmd {
        Invariant::Chi { input } => {
            let col = optimal_coloring(&load_graph(&input)?)?;
            cx.report(
                format!("{}\n", col.k),
                json!({ "chi": col.k, "coloring": col.colors }),
            )
        }
        Invariant::Chif { input } => {
            let r = fractional_chromatic_capped(&load_graph(&input)?, cx.max_lp)?;
            let weights: Vec<String> = r.clique_weights.iter().map(ToString::to_string).collect();
            cx.report(
                format!("{}\n", r.value),
                json!({ "chif": r.value.to_string(), "coloring": r.coloring, "clique_weights": weights }),
            )
        }
        Invariant::Alpha { input } => {
            let set = max_independent_set(&load_graph(&input)?)?;
            let text = format!("{}\n", set.len());
            cx.report(text, json!({ "alpha": set.len(), "set": set }))
        }
        Invariant::Omega { input } => {
            let clique = max_clique(&load_graph(&input)?)?;
            let text = format!("{}\n", clique.len());
            cx.report(text, json!({ "omega": clique.len(), "clique": clique }))
        }
        Invariant::Girth { input } => {
            let g = girth(&load_graph(&input)?)?;
            let text = g.map_or("acyclic\n".to_string(), |g| format!("{g}\n"));
            cx.report(text, json!({ "girth": g }))
        }
        Invariant::Dist { v, input } => {
            let g = load_graph(&input)?;
            let v = cx.index("vertex", v)?;
            let dist = distances(&g, v)?;
            let text = dist
                .iter()
                .enumerate()
                .fold(String::new(), |mut out, (u, d)| {
                    let _ = writeln!(out, "{} {d}", cx.show(u));
                    out
                });
            let values: Vec<Option<usize>> = dist.iter().map(|d| d.finite()).collect();
            cx.report(text, json!({ "source": v, "distances": values }))
        }
    }
}

fn run_hom(cx: &Ctx, g: &str, h: &str) -> CliResult<Output> {
    let map = find_homomorphism(&load_graph(g)?, &load_graph(h)?);
    let text = match &map {
        Some(m) => m
            .iter()
            .enumerate()
            .fold(String::new(), |mut out, (x, &a)| {
                let _ = writeln!(out, "{} -> {}", cx.show(x), cx.show(a));
                out
            }),
        None => "no homomorphism\n".to_string(),
    };
    cx.report(text, json!({ "exists": map.is_some(), "map": map }))
}

fn blowup_map_output(cx: &Ctx, m: &BlowupExpMap) -> CliResult<Output> {
    let mut text = String::new();
    for x in 0..m.base.n() {
        let values: Vec<String> = (0..m.q).map(|i| cx.show(m.at(x, i)).to_string()).collect();
        let _ = writeln!(text, "{}: {}", cx.show(x), values.join(" "));
    }
    cx.report(text, BlowupExpMapRecord::from(m))
}

fn run_exp(cx: &Ctx, cmd: Exp) -> CliResult<Output> {
    match cmd {
        Exp::Materialize { input, c } => {
            let ctx = ExpContext::new(load_graph(&input)?, c)?;
            Ok(graph_output(
                &materialize_exponential(&ctx, &cx.caps)?,
                cx.fmt,
            ))
        }
        Exp::Adjacent { input, c, f, g } => {
            let ctx = ExpContext::new(load_graph(&input)?, c)?;
            let f = ctx.map(cx.indices("value", &f)?)?;
            let g = ctx.map(cx.indices("value", &g)?)?;
            let witness = adjacency_witness(&ctx, &f, &g)?;
            let text = match witness {
                None => "adjacent\n".to_string(),
                Some((x, y)) => format!(
                    "not adjacent: f({}) = g({}) = {}\n",
                    cx.show(x),
                    cx.show(y),
                    cx.show(f.get(x))
                ),
            };
            cx.report(
                text,
                json!({ "adjacent": witness.is_none(), "witness": witness }),
            )
        }
        Exp::Mu { input, v, q, t } => {
            let g = load_graph(&input)?;
            blowup_map_output(
                cx,
                &shitov_mu(&g, cx.index("vertex", v)?, q, cx.index("colour", t)?)?,
            )
        }
        Exp::Theta { input, v, q, b, t } => {
            let g = load_graph(&input)?;
            let (db, dt) = default_theta_colors(q);
            let b = b.map_or(Ok(db), |b| cx.index("colour", b))?;
            let t = t.map_or(Ok(dt), |t| cx.index("colour", t))?;
            blowup_map_output(cx, &shitov_theta(&g, cx.index("vertex", v)?, q, b, t)?)
        }
        Exp::VerifyMuClique { input, v, q } => {
            let r = verify_mu_clique(&load_graph(&input)?, cx.index("vertex", v)?, q)?;
            let mut text = format!("pass: {}, pairs checked: {}\n", r.pass, r.pairs_checked);
            for w in &r.violations {
                let [(x, i), (y, j)] = w.edge;
                let _ = writeln!(
                    text,
                    "t={} t'={}: edge ({},{})-({},{}) both coloured {}",
                    cx.show(w.t),
                    cx.show(w.t_prime),
                    cx.show(x),
                    cx.show(i),
                    cx.show(y),
                    cx.show(j),
                    cx.show(w.value)
                );
            }
            cx.report(text, r)
        }
    }
}

fn run_shift(cx: &Ctx, cmd: Shift) -> CliResult<Output> {
    match cmd {
        Shift::Build { input, labels } => {
            let (shift, index) = arc_shift(&load_digraph(&input)?);
            let mut out = digraph_output(&shift, cx.fmt);
            if labels {
                let lines = index
                    .arcs()
                    .iter()
                    .enumerate()
                    .map(|(i, &(x, y))| (cx.show(i), cx.show(x), cx.show(y)));
                out.text = match cx.fmt {
                    Format::Text => {
                        lines
                            .map(|(i, x, y)| format!("# {i}: {x} -> {y}\n"))
                            .collect::<String>()
                            + &out.text
                    }
                    Format::Json => {
                        format!(
                            "{}\n",
                            graphprod::format::to_json(
                                &json!({ "digraph": shift, "arcs": index.arcs() })
                            )
                        )
                    }
                    Format::Dot => {
                        return Err(usage("--labels is not available with --format dot"))
                    }
                };
            }
            Ok(out)
        }
        Shift::Down { input, coloring } => {
            let d = load_digraph(&input)?;
            let sets = coloring_down(&d, &parse_coloring(&coloring, cx.base)?)?;
            let mut text = String::new();
            for (v, set) in sets.sets.iter().enumerate() {
                let colours: Vec<String> = set.iter().map(|&c| cx.show(c).to_string()).collect();
                let _ = writeln!(text, "{}: {}", cx.show(v), colours.join(" "));
            }
            cx.report(text, sets)
        }
        Shift::Up { input, sets, k } => {
            let d = load_digraph(&input)?;
            let col = coloring_up(&d, &parse_sets(&sets, cx.base, k)?)?;
            cx.report(cx.coloring_text(&col), col)
        }
        Shift::Schelp => {
            let (_, labels) = double_shift_k4();
            let col = schelp_coloring();
            let r = schelp_check()?;
            let mut text = String::new();
            for (&(i, j, k), &c) in labels.iter().zip(&col.colors) {
                let _ = writeln!(
                    text,
                    "{} {} {} {}",
                    cx.show(i),
                    cx.show(j),
                    cx.show(k),
                    cx.show(c)
                );
            }
            let _ = writeln!(text, "{} colors, proper: {}", r.colors_used, r.proper);
            cx.report(
                text,
                json!({ "labels": labels, "colors": col.colors, "check": r, "pass": r.pass() }),
            )
        }
        Shift::Functoriality { d1, d2 } => {
            let r = functoriality_check(&load_digraph(&d1)?, &load_digraph(&d2)?);
            let text = format!(
                "product mismatches: {}\nreverse mismatches: {}\npass: {}\n",
                r.product_mismatches,
                r.reverse_mismatches,
                r.pass()
            );
            cx.report(text, json!({ "report": r, "pass": r.pass() }))
        }
        Shift::Bounds { input } => {
            let r = lemma_rel_bounds_check(&load_digraph(&input)?)?;
            let text = format!(
                "chi(D) = {}\nchi(shift D) = {}\nbounds: {} <= {} <= {}\npass: {}\n",
                r.chi_d, r.chi_shift, r.lower, r.chi_shift, r.upper, r.pass
            );
            cx.report(text, r)
        }
        Shift::Chain { d1, d2 } => {
            let r = bound_chain_instance(&load_digraph(&d1)?, &load_digraph(&d2)?)?;
            let text = format!(
                "chi(D1 x D2) = {}\nchi(D1 x D2^-1) = {}\nchi(uD1 x uD2) = {}\npass: {}\n",
                r.a, r.b, r.c, r.pass
            );
            cx.report(text, r)
        }
    }
}

fn run_verify(cx: &Ctx, cmd: Verify) -> CliResult<Output> {
    let Verify::Suite { name, seed, timing } = cmd;
    let cfg = SuiteConfig {
        exp_caps: cx.caps,
        max_lp_vertices: cx.max_lp,
        jobs: cx.jobs,
        ..SuiteConfig::with_seed(seed)
    };
    let mut report = run_suite(&name, &cfg)?;
    if !timing {
        report.mask_timing();
    }
    let out = match cx.fmt {
        Format::Text => Output {
            text: report.table(),
        },
        _ => cx.report(String::new(), &report)?,
    };
    if report.passed() {
        return Ok(out);
    }
    emit(&out)?;
    let failed = report
        .claims
        .iter()
        .filter(|c| c.status == graphprod::harness::ClaimStatus::Fail);
    Err(CliError::ClaimFailed(failed.count()))
}

fn run(cli: Cli) -> CliResult<Output> {
    let cx = Ctx::new(&cli.global)?;
    match cli.command {
        Command::Gen(cmd) => run_gen(&cx, cmd),
        Command::Dgen(cmd) => run_dgen(&cx, cmd),
        Command::Invariant { which } => run_invariant(&cx, which),
        Command::Hom { g, h } => run_hom(&cx, &g, &h),
        Command::Exp(cmd) => run_exp(&cx, cmd),
        Command::Shift(cmd) => run_shift(&cx, cmd),
        Command::Verify(cmd) => run_verify(&cx, cmd),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli).and_then(|out| emit(&out)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("graphprod: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
