use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::{Coloring, Graph};

const NONE: usize = usize::MAX;

pub fn is_proper_coloring(g: &Graph, col: &Coloring) -> Result<bool> {
    g.require_loopless()?;
    if col.len() != g.n() {
        return Err(Error::InvalidParameter(format!(
            "coloring covers {} vertices, graph has {}",
            col.len(),
            g.n()
        )));
    }
    if col.colors.iter().any(|&c| c >= col.k) {
        return Ok(false);
    }
    Ok(g.edges().all(|(u, v)| col.colors[u] != col.colors[v]))
}

/// Largest clique among greedy extensions from the highest-degree start
/// vertices. Used as a lower bound and as the pre-coloured seed.
pub fn greedy_clique(g: &Graph) -> Vec<usize> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let adj = g.adjacency_bitsets();
    let mut starts: Vec<usize> = (0..n).collect();
    starts.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    starts.truncate(64);
    let mut best: Vec<usize> = Vec::new();
    for s in starts {
        let mut clique = vec![s];
        let mut cand = adj[s].clone();
        while let Some(v) = cand
            .iter()
            .max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)))
        {
            clique.push(v);
            cand.intersect_with(&adj[v]);
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best
}

struct Frame {
    v: usize,
    next: usize,
    cur: Option<usize>,
    used_before: usize,
}

/// DSATUR-style backtracking state: per-vertex counts of each forbidden
/// colour, with forward checking on domain wipe-out.
struct Search<'a> {
    g: &'a Graph,
    k: usize,
    color: Vec<usize>,
    forb: Vec<u32>,
    sat: Vec<usize>,
    colored: usize,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, k: usize) -> Self {
        Search {
            g,
            k,
            color: vec![NONE; g.n()],
            forb: vec![0; g.n() * k],
            sat: vec![0; g.n()],
            colored: 0,
        }
    }

    /// Returns false when some uncoloured neighbour has no colour left.
    fn assign(&mut self, v: usize, c: usize) -> bool {
        self.color[v] = c;
        self.colored += 1;
        let mut ok = true;
        for &u in self.g.neighbors(v) {
            if self.color[u] == NONE {
                let slot = &mut self.forb[u * self.k + c];
                *slot += 1;
                if *slot == 1 {
                    self.sat[u] += 1;
                    if self.sat[u] == self.k {
                        ok = false;
                    }
                }
            }
        }
        ok
    }

    fn unassign(&mut self, v: usize, c: usize) {
        for &u in self.g.neighbors(v) {
            if self.color[u] == NONE {
                let slot = &mut self.forb[u * self.k + c];
                *slot -= 1;
                if *slot == 0 {
                    self.sat[u] -= 1;
                }
            }
        }
        self.color[v] = NONE;
        self.colored -= 1;
    }

    fn select(&self) -> usize {
        let mut best = NONE;
        let mut key = (0, 0);
        for v in 0..self.g.n() {
            if self.color[v] != NONE {
                continue;
            }
            let kv = (self.sat[v], self.g.degree(v));
            if best == NONE || kv > key {
                best = v;
                key = kv;
            }
        }
        best
    }

    fn run(mut self, seed: &[usize]) -> Option<Vec<usize>> {
        for (c, &v) in seed.iter().enumerate() {
            if !self.assign(v, c) {
                return None;
            }
        }
        let n = self.g.n();
        let k = self.k;
        let mut used = seed.len();
        let mut stack: Vec<Frame> = Vec::new();
        'descend: loop {
            if self.colored == n {
                return Some(self.color);
            }
            let v = self.select();
            stack.push(Frame {
                v,
                next: 0,
                cur: None,
                used_before: used,
            });
            loop {
                let f = stack.last_mut()?;
                let (fv, used_before) = (f.v, f.used_before);
                if let Some(c) = f.cur.take() {
                    self.unassign(fv, c);
                }
                let f = stack.last_mut().expect("frame still present");
                let limit = k.min(used_before + 1);
                let choice = (f.next..limit).find(|&c| self.forb[fv * k + c] == 0);
                match choice {
                    Some(c) => {
                        f.next = c + 1;
                        f.cur = Some(c);
                        used = used_before.max(c + 1);
                        if self.assign(fv, c) {
                            continue 'descend;
                        }
                    }
                    None => {
                        stack.pop();
                        if stack.is_empty() {
                            return None;
                        }
                    }
                }
            }
        }
    }
}

/// A proper `k`-colouring if one exists. The search order is fixed, so the
/// returned witness is deterministic.
pub fn k_colorable(g: &Graph, k: usize) -> Result<Option<Coloring>> {
    g.require_loopless()?;
    let n = g.n();
    if n == 0 {
        return Ok(Some(Coloring {
            colors: Vec::new(),
            k,
        }));
    }
    if k == 0 {
        return Ok(None);
    }
    let seed = greedy_clique(g);
    if seed.len() > k {
        return Ok(None);
    }
    Ok(Search::new(g, k)
        .run(&seed)
        .map(|colors| Coloring { colors, k }))
}

/// An optimal colouring: `k` equals the chromatic number.
pub fn optimal_coloring(g: &Graph) -> Result<Coloring> {
    g.require_loopless()?;
    if g.n() == 0 {
        return Ok(Coloring {
            colors: Vec::new(),
            k: 0,
        });
    }
    let mut k = greedy_clique(g).len().max(1);
    loop {
        if let Some(c) = k_colorable(g, k)? {
            return Ok(c);
        }
        k += 1;
    }
}

pub fn chromatic_number(g: &Graph) -> Result<usize> {
    Ok(optimal_coloring(g)?.k)
}

/// Lowest-colour-first greedy colouring in vertex order; an upper bound.
pub fn greedy_coloring(g: &Graph) -> Result<Coloring> {
    g.require_loopless()?;
    let mut colors = vec![NONE; g.n()];
    let mut taken = BitSet::new(g.n() + 1);
    for v in 0..g.n() {
        for &u in g.neighbors(v) {
            if colors[u] != NONE {
                taken.insert(colors[u]);
            }
        }
        colors[v] = (0..).find(|&c| !taken.contains(c)).expect("n+1 slots");
        for &u in g.neighbors(v) {
            if colors[u] != NONE {
                taken.remove(colors[u]);
            }
        }
    }
    Ok(Coloring::from_colors(colors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::graph::{add_loops, blowup, complete_graph, cycle, kneser, tensor_product};

    /// Exhaustive k-colourability for tiny graphs.
    fn brute_colorable(g: &Graph, k: usize) -> bool {
        let n = g.n();
        if n == 0 {
            return true;
        }
        let mut col = vec![0usize; n];
        loop {
            if g.edges().all(|(u, v)| col[u] != col[v]) {
                return true;
            }
            let mut i = 0;
            loop {
                if i == n {
                    return false;
                }
                col[i] += 1;
                if col[i] < k {
                    break;
                }
                col[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn proper_coloring_checks() {
        let k2 = complete_graph(2).unwrap();
        assert!(is_proper_coloring(&k2, &Coloring::new(vec![0, 1], 2).unwrap()).unwrap());
        assert!(!is_proper_coloring(&k2, &Coloring::new(vec![0, 0], 2).unwrap()).unwrap());
        assert!(is_proper_coloring(&k2, &Coloring::new(vec![0], 2).unwrap()).is_err());
        assert!(
            is_proper_coloring(&add_loops(&k2), &Coloring::new(vec![0, 1], 2).unwrap()).is_err()
        );
    }

    #[test]
    fn small_cases() {
        let c5 = cycle(5).unwrap();
        assert!(k_colorable(&c5, 2).unwrap().is_none());
        let col = k_colorable(&c5, 3).unwrap().unwrap();
        assert!(is_proper_coloring(&c5, &col).unwrap());
        assert_eq!(chromatic_number(&complete_graph(4).unwrap()).unwrap(), 4);
        assert_eq!(chromatic_number(&cycle(6).unwrap()).unwrap(), 2);
        assert_eq!(chromatic_number(&Graph::empty(0)).unwrap(), 0);
        assert_eq!(chromatic_number(&Graph::empty(3)).unwrap(), 1);
        assert!(k_colorable(&Graph::empty(2), 0).unwrap().is_none());
        assert!(chromatic_number(&add_loops(&c5)).is_err());
    }

    #[test]
    fn catalog_chromatic_numbers() {
        assert_eq!(chromatic_number(&catalog::wheel5()).unwrap(), 4);
        assert_eq!(chromatic_number(&catalog::petersen()).unwrap(), 3);
        assert_eq!(chromatic_number(&catalog::heawood()).unwrap(), 2);
        assert_eq!(chromatic_number(&catalog::grotzsch()).unwrap(), 4);
    }

    #[test]
    fn kneser_and_products() {
        assert!(k_colorable(&kneser(8, 3).unwrap(), 3).unwrap().is_none());
        assert_eq!(chromatic_number(&kneser(7, 3).unwrap()).unwrap(), 3);
        let k4 = complete_graph(4).unwrap();
        let k5 = complete_graph(5).unwrap();
        assert_eq!(chromatic_number(&tensor_product(&k4, &k5)).unwrap(), 4);
        let c5 = cycle(5).unwrap();
        assert_eq!(chromatic_number(&tensor_product(&c5, &c5)).unwrap(), 3);
        assert_eq!(chromatic_number(&blowup(&c5, 2).unwrap()).unwrap(), 5);
        let lk2 = add_loops(&complete_graph(2).unwrap());
        let p = tensor_product(&lk2, &complete_graph(3).unwrap());
        assert_eq!(chromatic_number(&p).unwrap(), 3);
    }

    #[test]
    fn agrees_with_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.gen_range(1..=7);
            let edges: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(0.5))
                .collect();
            let g = Graph::from_edges(n, edges).unwrap();
            for k in 1..=4 {
                let found = k_colorable(&g, k).unwrap();
                assert_eq!(found.is_some(), brute_colorable(&g, k));
                if let Some(c) = found {
                    assert!(is_proper_coloring(&g, &c).unwrap());
                }
            }
        }
    }

    #[test]
    fn monotone_in_k() {
        let g = catalog::grotzsch();
        let res: Vec<bool> = (0..7)
            .map(|k| k_colorable(&g, k).unwrap().is_some())
            .collect();
        assert_eq!(res, vec![false, false, false, false, true, true, true]);
    }

    #[test]
    fn deterministic_witness() {
        let g = catalog::petersen();
        assert_eq!(k_colorable(&g, 3).unwrap(), k_colorable(&g, 3).unwrap());
    }

    #[test]
    fn greedy_is_upper_bound() {
        let g = catalog::heawood();
        let c = greedy_coloring(&g).unwrap();
        assert!(is_proper_coloring(&g, &c).unwrap());
        assert!(c.k >= 2);
    }
}
