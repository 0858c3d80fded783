//! Graph and digraph data model together with the generators and the
//! product/blow-up/orientation operators built on top of it.
//!
//! Vertices are the indices `0..n`. Pair-indexed constructions (products,
//! blow-ups) use row-major numbering: the pair `(x, y)` over a second factor
//! with `m` vertices lives at index `x * m + y`.

use std::collections::VecDeque;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// A finite undirected graph. Edges join distinct vertices; loops are kept
/// in a separate per-vertex flag and never appear in the edge lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphRecord", into = "GraphRecord")]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    loops: Vec<bool>,
}

/// Structured-object form of a [`Graph`], mirroring its fields.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default)]
    pub loops: Vec<usize>,
}

impl TryFrom<GraphRecord> for Graph {
    type Error = Error;

    fn try_from(r: GraphRecord) -> Result<Self> {
        Graph::with_loops(r.n, r.edges.iter().map(|e| (e[0], e[1])), r.loops)
    }
}

impl From<Graph> for GraphRecord {
    fn from(g: Graph) -> Self {
        GraphRecord {
            n: g.n(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
            loops: g.loop_vertices().collect(),
        }
    }
}

fn check_vertex(v: usize, n: usize) -> Result<()> {
    if v < n {
        Ok(())
    } else {
        Err(Error::VertexOutOfRange { vertex: v, n })
    }
}

impl Graph {
    /// Builds a loopless graph. Repeated edges collapse into one.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::with_loops(n, edges, std::iter::empty())
    }

    pub fn with_loops(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        loops: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            check_vertex(u, n)?;
            check_vertex(v, n)?;
            if u == v {
                return Err(Error::SelfEdge(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut flags = vec![false; n];
        for v in loops {
            check_vertex(v, n)?;
            flags[v] = true;
        }
        Ok(Self::from_parts(adj, flags))
    }

    /// Internal constructor; sorts and deduplicates the neighbour lists.
    pub(crate) fn from_parts(mut adj: Vec<Vec<usize>>, loops: Vec<bool>) -> Self {
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
        }
        Graph { adj, loops }
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            loops: vec![false; n],
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Sorted neighbours of `v`, excluding `v` itself even when looped.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_loop(&self, v: usize) -> bool {
        self.loops[v]
    }

    pub fn loop_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.loops
            .iter()
            .enumerate()
            .filter(|(_, &l)| l)
            .map(|(v, _)| v)
    }

    pub fn has_loops(&self) -> bool {
        self.loops.iter().any(|&l| l)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.adj[u].binary_search(&v).is_ok()
    }

    /// True when `uv` is an edge, or `u == v` and `u` carries a loop.
    pub fn adjacent_or_loop(&self, u: usize, v: usize) -> bool {
        if u == v {
            self.loops[u]
        } else {
            self.has_edge(u, v)
        }
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Returns an error naming the first looped vertex, if any.
    pub fn require_loopless(&self) -> Result<()> {
        match self.loop_vertices().next() {
            Some(v) => Err(Error::LoopsNotAllowed(v)),
            None => Ok(()),
        }
    }

    pub fn adjacency_bitsets(&self) -> Vec<BitSet> {
        let n = self.n();
        self.adj
            .iter()
            .map(|list| {
                let mut s = BitSet::new(n);
                for &v in list {
                    s.insert(v);
                }
                s
            })
            .collect()
    }

    /// Loopless complement.
    pub fn complement(&self) -> Graph {
        let n = self.n();
        let adj = (0..n)
            .map(|u| (0..n).filter(|&v| v != u && !self.has_edge(u, v)).collect())
            .collect();
        Graph::from_parts(adj, vec![false; n])
    }

    /// Subgraph induced on `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Graph> {
        let mut pos = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            check_vertex(v, self.n())?;
            pos[v] = i;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter(|&&u| pos[u] != usize::MAX)
                    .map(|&u| pos[u])
                    .collect()
            })
            .collect();
        let loops = vertices.iter().map(|&v| self.loops[v]).collect();
        Ok(Graph::from_parts(adj, loops))
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .tuple_combinations()
            .all(|(&u, &v)| !self.has_edge(u, v))
            && set.iter().all(|&v| !self.loops[v])
    }
}

/// A finite loopless digraph; opposite arcs (digons) are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "DigraphRecord", into = "DigraphRecord")]
pub struct Digraph {
    out: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigraphRecord {
    pub n: usize,
    pub arcs: Vec<[usize; 2]>,
}

impl TryFrom<DigraphRecord> for Digraph {
    type Error = Error;

    fn try_from(r: DigraphRecord) -> Result<Self> {
        Digraph::from_arcs(r.n, r.arcs.iter().map(|a| (a[0], a[1])))
    }
}

impl From<Digraph> for DigraphRecord {
    fn from(d: Digraph) -> Self {
        DigraphRecord {
            n: d.n(),
            arcs: d.arcs().map(|(x, y)| [x, y]).collect(),
        }
    }
}

impl Digraph {
    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut out = vec![Vec::new(); n];
        for (x, y) in arcs {
            check_vertex(x, n)?;
            check_vertex(y, n)?;
            if x == y {
                return Err(Error::SelfEdge(x));
            }
            out[x].push(y);
        }
        Ok(Self::from_out(out))
    }

    pub(crate) fn from_out(mut out: Vec<Vec<usize>>) -> Self {
        for list in out.iter_mut() {
            list.sort_unstable();
            list.dedup();
        }
        Digraph { out }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    #[inline]
    pub fn out_neighbors(&self, x: usize) -> &[usize] {
        &self.out[x]
    }

    pub fn has_arc(&self, x: usize, y: usize) -> bool {
        self.out[x].binary_search(&y).is_ok()
    }

    /// Arcs in lexicographic `(tail, head)` order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(x, list)| list.iter().map(move |&y| (x, y)))
    }

    /// `D⁻¹`: every arc reversed.
    pub fn reverse(&self) -> Digraph {
        let mut out = vec![Vec::new(); self.n()];
        for (x, y) in self.arcs() {
            out[y].push(x);
        }
        Digraph::from_out(out)
    }

    /// Forgets orientation; a digon becomes a single edge.
    pub fn underline(&self) -> Graph {
        let mut adj = vec![Vec::new(); self.n()];
        for (x, y) in self.arcs() {
            adj[x].push(y);
            adj[y].push(x);
        }
        Graph::from_parts(adj, vec![false; self.n()])
    }
}

/// A total vertex colouring with palette `{0, .., k-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coloring {
    pub colors: Vec<usize>,
    pub k: usize,
}

impl Coloring {
    pub fn new(colors: Vec<usize>, k: usize) -> Result<Self> {
        if let Some(&c) = colors.iter().find(|&&c| c >= k) {
            return Err(Error::InvalidParameter(format!(
                "color {c} outside palette of size {k}"
            )));
        }
        Ok(Coloring { colors, k })
    }

    /// Coloring with palette size equal to one more than the largest color.
    pub fn from_colors(colors: Vec<usize>) -> Self {
        let k = colors.iter().map(|&c| c + 1).max().unwrap_or(0);
        Coloring { colors, k }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Number of distinct colors actually used.
    pub fn colors_used(&self) -> usize {
        self.colors.iter().unique().count()
    }
}

/// BFS distance; `Unreachable` compares above every finite distance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Distance {
    Finite(usize),
    Unreachable,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Unreachable => None,
        }
    }
}

impl std::fmt::Display for Distance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Unreachable => write!(f, "inf"),
        }
    }
}

/// Breadth-first distances from `v`; loops are ignored.
pub fn distances(g: &Graph, v: usize) -> Result<Vec<Distance>> {
    check_vertex(v, g.n())?;
    let mut dist = vec![Distance::Unreachable; g.n()];
    dist[v] = Distance::Finite(0);
    let mut queue = VecDeque::from([v]);
    while let Some(u) = queue.pop_front() {
        let Distance::Finite(du) = dist[u] else {
            unreachable!()
        };
        for &w in g.neighbors(u) {
            if dist[w] == Distance::Unreachable {
                dist[w] = Distance::Finite(du + 1);
                queue.push_back(w);
            }
        }
    }
    Ok(dist)
}

pub fn complete_graph(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "complete graph needs n >= 1".into(),
        ));
    }
    let adj = (0..n)
        .map(|u| (0..n).filter(|&v| v != u).collect())
        .collect();
    Ok(Graph::from_parts(adj, vec![false; n]))
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "cycle needs n >= 3, got {n}"
        )));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// Simple path on `n` vertices, `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges are in range")
}

/// Kneser graph `K(m, k)`: the `k`-subsets of `{0..m-1}` in lexicographic
/// order, adjacent when disjoint.
pub fn kneser(m: usize, k: usize) -> Result<Graph> {
    if k == 0 || m < 2 * k {
        return Err(Error::InvalidParameter(format!(
            "kneser needs m >= 2k >= 2, got m={m}, k={k}"
        )));
    }
    if m > 64 {
        return Err(Error::InvalidParameter(format!(
            "kneser supports m <= 64, got {m}"
        )));
    }
    let masks: Vec<u64> = kneser_subsets(m, k)
        .map(|s| s.iter().fold(0u64, |acc, &e| acc | 1 << e))
        .collect();
    let adj = masks
        .iter()
        .map(|&a| {
            masks
                .iter()
                .enumerate()
                .filter(|(_, &b)| a & b == 0)
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    Ok(Graph::from_parts(adj, vec![false; masks.len()]))
}

/// The vertex labels of [`kneser`], in vertex order.
pub fn kneser_subsets(m: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..m).combinations(k)
}

/// Circular clique `K_{p/q}`: `i ~ j` iff `q <= |i - j| <= p - q`.
pub fn circular_clique(p: usize, q: usize) -> Result<Graph> {
    if q == 0 || p < 2 * q {
        return Err(Error::InvalidParameter(format!(
            "circular clique needs p >= 2q >= 2, got p={p}, q={q}"
        )));
    }
    let adj = (0..p)
        .map(|i| {
            (0..p)
                .filter(|&j| {
                    let d = i.abs_diff(j);
                    q <= d && d <= p - q
                })
                .collect()
        })
        .collect();
    Ok(Graph::from_parts(adj, vec![false; p]))
}

/// Categorical product `G × H` on row-major pairs. Loops in either factor
/// count as adjacency of a vertex with itself.
pub fn tensor_product(g: &Graph, h: &Graph) -> Graph {
    let m = h.n();
    let closed = |gr: &Graph, v: usize| -> Vec<usize> {
        let mut list = gr.neighbors(v).to_vec();
        if gr.has_loop(v) {
            let pos = list.binary_search(&v).unwrap_err();
            list.insert(pos, v);
        }
        list
    };
    let h_closed: Vec<Vec<usize>> = (0..m).map(|y| closed(h, y)).collect();
    let mut adj = Vec::with_capacity(g.n() * m);
    let mut loops = Vec::with_capacity(g.n() * m);
    for x in 0..g.n() {
        let gx = closed(g, x);
        for (y, hy) in h_closed.iter().enumerate() {
            let me = x * m + y;
            let mut list = Vec::with_capacity(gx.len() * hy.len());
            for &x2 in &gx {
                for &y2 in hy {
                    let other = x2 * m + y2;
                    if other != me {
                        list.push(other);
                    }
                }
            }
            adj.push(list);
            loops.push(g.has_loop(x) && h.has_loop(y));
        }
    }
    Graph::from_parts(adj, loops)
}

/// `G[K_q]`: vertex `(x, i)` at index `x * q + i`.
pub fn blowup(g: &Graph, q: usize) -> Result<Graph> {
    g.require_loopless()?;
    if q == 0 {
        return Err(Error::InvalidParameter("blow-up needs q >= 1".into()));
    }
    let n = g.n();
    let mut adj = Vec::with_capacity(n * q);
    for x in 0..n {
        for i in 0..q {
            let mut list = Vec::with_capacity((g.degree(x) + 1) * q);
            for &y in g.neighbors(x) {
                list.extend((0..q).map(|j| y * q + j));
            }
            list.extend((0..q).filter(|&j| j != i).map(|j| x * q + j));
            adj.push(list);
        }
    }
    Ok(Graph::from_parts(adj, vec![false; n * q]))
}

/// `G°`: the same edges with a loop at every vertex.
pub fn add_loops(g: &Graph) -> Graph {
    Graph {
        adj: g.adj.clone(),
        loops: vec![true; g.n()],
    }
}

pub fn complete_digraph(n: usize) -> Result<Digraph> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "complete digraph needs n >= 1".into(),
        ));
    }
    Ok(Digraph::from_out(
        (0..n)
            .map(|x| (0..n).filter(|&y| y != x).collect())
            .collect(),
    ))
}

/// `D1 × D2`: `(x, y) -> (x', y')` iff `x -> x'` and `y -> y'`.
pub fn digraph_product(d1: &Digraph, d2: &Digraph) -> Digraph {
    let m = d2.n();
    let mut out = vec![Vec::new(); d1.n() * m];
    for (x, x2) in d1.arcs() {
        for (y, y2) in d2.arcs() {
            out[x * m + y].push(x2 * m + y2);
        }
    }
    Digraph::from_out(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_counts() {
        assert_eq!(complete_graph(1).unwrap().edge_count(), 0);
        assert_eq!(complete_graph(4).unwrap().edge_count(), 6);
        assert!(complete_graph(0).is_err());
    }

    #[test]
    fn cycle_rejects_short() {
        assert!(cycle(2).is_err());
        let c5 = cycle(5).unwrap();
        assert_eq!(c5.edge_count(), 5);
        assert!(c5.neighbors(0) == [1, 4]);
    }

    #[test]
    fn kneser_counts_and_order() {
        let k52 = kneser(5, 2).unwrap();
        assert_eq!(k52.n(), 10);
        assert_eq!(k52.edge_count(), 15);
        let labels: Vec<_> = kneser_subsets(5, 2).collect();
        assert_eq!(labels[0], vec![0, 1]);
        assert_eq!(labels[9], vec![3, 4]);
        // {0,1} is disjoint from {2,3},{2,4},{3,4}
        assert_eq!(k52.neighbors(0), &[7, 8, 9]);
        assert!(kneser(3, 2).is_err());
        assert!(kneser(4, 0).is_err());
    }

    #[test]
    fn kneser_2k_k_is_perfect_matching() {
        for k in 1..=4 {
            let g = kneser(2 * k, k).unwrap();
            assert!((0..g.n()).all(|v| g.degree(v) == 1));
            assert_eq!(g.edge_count() * 2, g.n());
        }
    }

    #[test]
    fn circular_cliques() {
        for p in 2..7 {
            assert_eq!(circular_clique(p, 1).unwrap(), complete_graph(p).unwrap());
        }
        let c = circular_clique(5, 2).unwrap();
        assert_eq!(c.edge_count(), 5);
        assert!((0..5).all(|v| c.degree(v) == 2));
        let c72 = circular_clique(7, 2).unwrap();
        assert!((0..7).all(|v| c72.degree(v) == 4));
        assert!(circular_clique(3, 2).is_err());
    }

    #[test]
    fn tensor_k2_k2() {
        let k2 = complete_graph(2).unwrap();
        let p = tensor_product(&k2, &k2);
        assert_eq!(p.n(), 4);
        assert_eq!(p.edges().collect::<Vec<_>>(), vec![(0, 3), (1, 2)]);
    }

    #[test]
    fn tensor_k2_k3() {
        let p = tensor_product(&complete_graph(2).unwrap(), &complete_graph(3).unwrap());
        assert_eq!(p.n(), 6);
        assert_eq!(p.edge_count(), 6);
    }

    #[test]
    fn tensor_with_loops() {
        let lk2 = add_loops(&complete_graph(2).unwrap());
        let k3 = complete_graph(3).unwrap();
        let p = tensor_product(&lk2, &k3);
        assert!(!p.has_loops());
        // fiber x=0 is a copy of K3 since 0 carries a loop
        assert!(p.has_edge(0, 1) && p.has_edge(1, 2) && p.has_edge(0, 2));
        let both = tensor_product(&lk2, &add_loops(&k3));
        assert!(both.loop_vertices().count() == 6);
    }

    #[test]
    fn blowup_shapes() {
        let c5 = cycle(5).unwrap();
        assert_eq!(blowup(&c5, 1).unwrap(), c5);
        let b = blowup(&c5, 2).unwrap();
        assert_eq!(b.n(), 10);
        assert!((0..10).all(|v| b.degree(v) == 5));
        assert_eq!(b.edge_count(), 25);
        assert!(blowup(&add_loops(&c5), 2).is_err());
        assert!(blowup(&c5, 0).is_err());
    }

    #[test]
    fn add_loops_idempotent() {
        let k1 = complete_graph(1).unwrap();
        let l = add_loops(&k1);
        assert!(l.has_loop(0));
        assert_eq!(add_loops(&l), l);
    }

    #[test]
    fn digraph_basics() {
        let k2 = complete_digraph(2).unwrap();
        assert_eq!(k2.arcs().collect::<Vec<_>>(), vec![(0, 1), (1, 0)]);
        let k4 = complete_digraph(4).unwrap();
        assert_eq!(k4.arc_count(), 12);
        assert_eq!(k4.reverse(), k4);
        assert_eq!(k4.underline(), complete_graph(4).unwrap());
        assert_eq!(
            complete_digraph(3).unwrap().underline(),
            complete_graph(3).unwrap()
        );
        assert!(Digraph::from_arcs(2, [(1, 1)]).is_err());
    }

    #[test]
    fn digraph_product_counts() {
        let a = Digraph::from_arcs(2, [(0, 1)]).unwrap();
        assert_eq!(digraph_product(&a, &a).arc_count(), 1);
        let k2 = complete_digraph(2).unwrap();
        let p = digraph_product(&k2, &k2);
        assert_eq!(p.n(), 4);
        assert_eq!(
            p.arcs().collect::<Vec<_>>(),
            vec![(0, 3), (1, 2), (2, 1), (3, 0)]
        );
    }

    #[test]
    fn reverse_and_underline_single_arc() {
        let a = Digraph::from_arcs(2, [(0, 1)]).unwrap();
        assert_eq!(a.reverse().arcs().collect::<Vec<_>>(), vec![(1, 0)]);
        assert_eq!(a.reverse().reverse(), a);
        assert_eq!(a.underline().edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn distances_small() {
        let c5 = cycle(5).unwrap();
        let d: Vec<_> = distances(&c5, 0)
            .unwrap()
            .iter()
            .map(|d| d.finite().unwrap())
            .collect();
        assert_eq!(d, vec![0, 1, 2, 2, 1]);
        let k4 = complete_graph(4).unwrap();
        let d: Vec<_> = distances(&k4, 0)
            .unwrap()
            .iter()
            .map(|d| d.finite().unwrap())
            .collect();
        assert_eq!(d, vec![0, 1, 1, 1]);
        let two = Graph::empty(2);
        assert_eq!(distances(&two, 0).unwrap()[1], Distance::Unreachable);
        assert!(Distance::Unreachable > Distance::Finite(1_000_000));
        assert!(distances(&two, 2).is_err());
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Graph::from_edges(3, [(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(Error::SelfEdge(1)));
        assert!(Graph::with_loops(2, [], [2]).is_err());
    }
}
