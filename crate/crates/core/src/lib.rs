//! Categorical graph products, exponential graphs and arc-shift digraphs,
//! with exact solvers for the colouring invariants around them.

pub mod arcshift;
pub mod bitset;
pub mod catalog;
pub mod error;
pub mod exponential;
pub mod format;
pub mod graph;
pub mod harness;
pub mod solvers;

pub use error::{Error, Result};
pub use graph::{Coloring, Digraph, Distance, Graph};
