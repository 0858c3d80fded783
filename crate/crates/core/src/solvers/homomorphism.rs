use crate::bitset::BitSet;
use crate::graph::Graph;

/// A vertex map `V(G) -> V(H)`, indexed by the vertices of `G`.
pub type HomMap = Vec<usize>;

/// Checks that `map` sends every edge to an edge-or-loop and every loop to
/// a loop.
pub fn is_homomorphism(g: &Graph, h: &Graph, map: &[usize]) -> bool {
    map.len() == g.n()
        && map.iter().all(|&a| a < h.n())
        && g.edges().all(|(u, v)| h.adjacent_or_loop(map[u], map[v]))
        && g.loop_vertices().all(|v| h.has_loop(map[v]))
}

pub fn compose(first: &[usize], second: &[usize]) -> HomMap {
    first.iter().map(|&a| second[a]).collect()
}

struct HomSearch<'a> {
    g: &'a Graph,
    order: Vec<usize>,
    closed: Vec<BitSet>,
    domains: Vec<BitSet>,
    assigned: Vec<usize>,
}

impl HomSearch<'_> {
    fn solve(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let x = self.order[depth];
        let values: Vec<usize> = self.domains[x].iter().collect();
        for a in values {
            self.assigned[x] = a;
            let mut saved = Vec::new();
            let mut wiped = false;
            for &y in self.g.neighbors(x) {
                if self.assigned[y] == usize::MAX {
                    saved.push((y, self.domains[y].clone()));
                    self.domains[y].intersect_with(&self.closed[a]);
                    if self.domains[y].is_empty() {
                        wiped = true;
                        break;
                    }
                }
            }
            if !wiped && self.solve(depth + 1) {
                return true;
            }
            for (y, d) in saved.into_iter().rev() {
                self.domains[y] = d;
            }
            self.assigned[x] = usize::MAX;
        }
        false
    }
}

/// Backtracking over the vertices of `G` in degree-descending order with
/// forward checking. Target values are tried in increasing order.
pub fn find_homomorphism(g: &Graph, h: &Graph) -> Option<HomMap> {
    let m = h.n();
    let closed: Vec<BitSet> = (0..m)
        .map(|a| {
            let mut s = BitSet::new(m);
            for &b in h.neighbors(a) {
                s.insert(b);
            }
            if h.has_loop(a) {
                s.insert(a);
            }
            s
        })
        .collect();
    let mut looped = BitSet::new(m);
    for a in h.loop_vertices() {
        looped.insert(a);
    }
    let domains: Vec<BitSet> = (0..g.n())
        .map(|x| {
            if g.has_loop(x) {
                looped.clone()
            } else {
                BitSet::full(m)
            }
        })
        .collect();
    if domains.iter().any(BitSet::is_empty) {
        return None;
    }
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut search = HomSearch {
        g,
        order,
        closed,
        domains,
        assigned: vec![usize::MAX; g.n()],
    };
    if search.solve(0) {
        Some(search.assigned)
    } else {
        None
    }
}
