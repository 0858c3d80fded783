//! Seeded instance generators.
//!
//! The vertex count is uniform in an inclusive range; each edge (or arc)
//! is then present independently with a fixed probability. Every claim
//! draws from its own ChaCha stream, so claims are independent of one
//! another and of execution order.

use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::graph::{Digraph, Graph};

/// Distribution parameters, recorded verbatim in claim reports.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Distribution {
    pub n_min: usize,
    pub n_max: usize,
    pub probability: f64,
}

impl Distribution {
    pub const fn new(n: RangeInclusive<usize>, probability: f64) -> Self {
        Distribution {
            n_min: *n.start(),
            n_max: *n.end(),
            probability,
        }
    }
}

pub fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn random_graph(rng: &mut impl Rng, dist: &Distribution) -> Graph {
    let n = rng.gen_range(dist.n_min..=dist.n_max);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(dist.probability) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("generated edges are in range")
}

pub fn random_digraph(rng: &mut impl Rng, dist: &Distribution) -> Digraph {
    let n = rng.gen_range(dist.n_min..=dist.n_max);
    let mut arcs = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if x != y && rng.gen_bool(dist.probability) {
                arcs.push((x, y));
            }
        }
    }
    Digraph::from_arcs(n, arcs).expect("generated arcs are in range")
}

/// Every loopless digraph on `n` vertices, by arc bitmask over the ordered
/// pairs `(x, y)`, `x != y`, in lexicographic order.
pub fn all_digraphs(n: usize) -> impl Iterator<Item = Digraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
        .collect();
    assert!(pairs.len() < 32, "exhaustive enumeration limited to n <= 5");
    (0u32..1 << pairs.len()).map(move |mask| {
        let arcs = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &a)| a);
        Digraph::from_arcs(n, arcs).expect("pairs are in range")
    })
}
