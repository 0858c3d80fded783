//! Exact graph invariants.

mod cliques;
mod coloring;
mod fractional;
mod homomorphism;
pub mod lp;

pub use cliques::{
    clique_number, girth, independence_number, max_clique, max_independent_set,
    maximal_independent_sets,
};
pub use coloring::{
    chromatic_number, greedy_clique, greedy_coloring, is_proper_coloring, k_colorable,
    optimal_coloring,
};
pub use fractional::{
    certify, fractional_chromatic, fractional_chromatic_capped, FractionalColoring,
    FractionalRecord, FractionalResult, WeightedSet, DEFAULT_MAX_LP_VERTICES,
};
pub use homomorphism::{compose, find_homomorphism, is_homomorphism, HomMap};
pub use lp::Rational;
