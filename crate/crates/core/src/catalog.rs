//! Named graphs with fixed vertex numbering.
//!
//! * `heawood`: Hamiltonian cycle `0..14` plus chords `2j -- 2j+5 (mod 14)`
//!   (LCF notation `[5,-5]^7`). 14 vertices, 21 edges, girth 6.
//! * `petersen`: outer cycle `0..5`, spokes `i -- i+5`, inner pentagram
//!   `5+i -- 5+(i+2 mod 5)`.
//! * `w5`: rim cycle `0..5` and hub `5` joined to every rim vertex.
//! * `grotzsch`: Mycielskian of `C5`; cycle `0..5`, shadow `5+i` joined to
//!   the cycle-neighbours of `i`, apex `10` joined to every shadow.

use crate::error::{Error, Result};
use crate::graph::{complete_graph, cycle, path, Graph};

pub const CATALOG_IDS: [&str; 4] = ["heawood", "petersen", "w5", "grotzsch"];

pub fn named(id: &str) -> Result<Graph> {
    match id {
        "heawood" => Ok(heawood()),
        "petersen" => Ok(petersen()),
        "w5" => Ok(wheel5()),
        "grotzsch" => Ok(grotzsch()),
        other => Err(Error::UnknownCatalog(other.to_string())),
    }
}

/// Resolves a catalog id or a family shorthand: `K<n>` (complete), `C<n>`
/// (cycle), `P<n>` (path), `E<n>` (edgeless).
pub fn resolve(name: &str) -> Result<Graph> {
    if let Ok(g) = named(name) {
        return Ok(g);
    }
    let mut chars = name.chars();
    let family = chars.next();
    let size: Option<usize> = chars.as_str().parse().ok();
    match (family, size) {
        (Some('K'), Some(n)) => complete_graph(n),
        (Some('C'), Some(n)) => cycle(n),
        (Some('P'), Some(n)) => Ok(path(n)),
        (Some('E'), Some(n)) => Ok(Graph::empty(n)),
        _ => Err(Error::UnknownCatalog(name.to_string())),
    }
}

pub fn heawood() -> Graph {
    let ring = (0..14).map(|i| (i, (i + 1) % 14));
    let chords = (0..7).map(|j| (2 * j, (2 * j + 5) % 14));
    Graph::from_edges(14, ring.chain(chords)).expect("static edge list")
}

pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    Graph::from_edges(10, outer.chain(spokes).chain(inner)).expect("static edge list")
}

pub fn wheel5() -> Graph {
    let rim = (0..5).map(|i| (i, (i + 1) % 5));
    let hub = (0..5).map(|i| (i, 5));
    Graph::from_edges(6, rim.chain(hub)).expect("static edge list")
}

pub fn grotzsch() -> Graph {
    let cycle = (0..5).map(|i| (i, (i + 1) % 5));
    let shadows = (0..5).flat_map(|i| [(5 + i, (i + 1) % 5), (5 + i, (i + 4) % 5)]);
    let apex = (5..10).map(|s| (s, 10));
    Graph::from_edges(11, cycle.chain(shadows).chain(apex)).expect("static edge list")
}
