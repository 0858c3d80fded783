//! The arc-shift operator `∂` and the colouring transforms relating
//! `χ(D)` and `χ(∂D)`.
//!
//! The chromatic number of a digraph is always that of its underlying
//! graph. `∂(D)` has one vertex per arc of `D`, numbered by the
//! lexicographic `(tail, head)` order of [`ArcIndex`].

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{complete_digraph, digraph_product, tensor_product, Coloring, Digraph, Graph};
use crate::solvers::{chromatic_number, is_proper_coloring, k_colorable, optimal_coloring};

/// Bijection between the arcs of a digraph (sorted by `(tail, head)`) and
/// the vertices of its arc-shift.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcIndex {
    arcs: Vec<(usize, usize)>,
}

impl ArcIndex {
    pub fn of(d: &Digraph) -> Self {
        ArcIndex {
            arcs: d.arcs().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn arc(&self, i: usize) -> (usize, usize) {
        self.arcs[i]
    }

    pub fn index(&self, arc: (usize, usize)) -> Option<usize> {
        self.arcs.binary_search(&arc).ok()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }
}

/// `∂(D)`: `(x, y) -> (y, z)` for every pair of consecutive arcs.
pub fn arc_shift(d: &Digraph) -> (Digraph, ArcIndex) {
    let index = ArcIndex::of(d);
    // arcs leaving y occupy a contiguous block of the sorted arc list
    let mut start = vec![0usize; d.n() + 1];
    for &(x, _) in index.arcs() {
        start[x + 1] += 1;
    }
    for v in 0..d.n() {
        start[v + 1] += start[v];
    }
    let out = index
        .arcs()
        .iter()
        .map(|&(_, y)| (start[y]..start[y + 1]).collect())
        .collect();
    (Digraph::from_out(out), index)
}

/// An assignment of colour sets `⊆ {0..k-1}`; `size` is `Some(s)` when every
/// set must have exactly `s` elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetColoring {
    pub sets: Vec<BTreeSet<usize>>,
    pub k: usize,
    pub size: Option<usize>,
}

impl SetColoring {
    pub fn distinct_sets(&self) -> usize {
        self.sets.iter().unique().count()
    }

    /// Well-formed, and adjacent vertices of `underline(D)` get distinct sets.
    pub fn is_proper_for(&self, d: &Digraph) -> bool {
        self.sets.len() == d.n()
            && self.sets.iter().all(|s| s.iter().all(|&c| c < self.k))
            && self
                .size
                .is_none_or(|s| self.sets.iter().all(|set| set.len() == s))
            && d.arcs().all(|(x, y)| self.sets[x] != self.sets[y])
    }
}

/// Out-arc colour sets: `ψ(v) = {φ(e) : e leaves v}`.
pub fn coloring_down(d: &Digraph, shift_coloring: &Coloring) -> Result<SetColoring> {
    let (shift, index) = arc_shift(d);
    if !is_proper_coloring(&shift.underline(), shift_coloring)? {
        return Err(Error::Precondition(
            "coloring of the arc-shift is not proper".into(),
        ));
    }
    let mut sets = vec![BTreeSet::new(); d.n()];
    for (i, &(x, _)) in index.arcs().iter().enumerate() {
        sets[x].insert(shift_coloring.colors[i]);
    }
    Ok(SetColoring {
        sets,
        k: shift_coloring.k,
        size: None,
    })
}

/// `φ(x, y) = min(ψ(y) \ ψ(x))` for a proper equal-size set colouring.
pub fn coloring_up(d: &Digraph, sets: &SetColoring) -> Result<Coloring> {
    let Some(first) = sets.sets.first() else {
        return Ok(Coloring {
            colors: Vec::new(),
            k: sets.k,
        });
    };
    let s = first.len();
    if sets.sets.iter().any(|set| set.len() != s) {
        return Err(Error::Precondition(
            "set coloring uses sets of unequal sizes".into(),
        ));
    }
    if !sets.is_proper_for(d) {
        return Err(Error::Precondition(
            "set coloring is not proper on the digraph".into(),
        ));
    }
    let colors = d
        .arcs()
        .map(|(x, y)| {
            *sets.sets[y]
                .difference(&sets.sets[x])
                .next()
                .expect("distinct sets of equal size differ both ways")
        })
        .collect();
    Ok(Coloring { colors, k: sets.k })
}

/// `min{k : 2^k >= chi}`.
pub fn lower_shift_bound(chi: usize) -> usize {
    (0..).find(|&k| 1u128 << k >= chi as u128).expect("finite")
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// `min{k : C(k, ⌈k/2⌉) >= chi}`.
pub fn upper_shift_bound(chi: usize) -> usize {
    (0..)
        .find(|&k| binomial(k, k.div_ceil(2)) >= chi as u128)
        .expect("finite")
}

/// Replaces colour `i` by the `i`-th `⌈k/2⌉`-subset of `{0..k-1}` in
/// lexicographic order, with `k` the smallest value offering enough subsets.
pub fn subsets_from_coloring(col: &Coloring) -> SetColoring {
    let k = upper_shift_bound(col.k);
    let s = k.div_ceil(2);
    let subsets: Vec<BTreeSet<usize>> = (0..k)
        .combinations(s)
        .take(col.k)
        .map(|c| c.into_iter().collect())
        .collect();
    SetColoring {
        sets: col.colors.iter().map(|&c| subsets[c].clone()).collect(),
        k,
        size: Some(s),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemRelReport {
    pub chi_d: usize,
    pub chi_shift: usize,
    pub lower: usize,
    pub upper: usize,
    pub pass: bool,
}

pub fn lemma_rel_bounds_check(d: &Digraph) -> Result<LemRelReport> {
    let chi_d = chromatic_number(&d.underline())?;
    let chi_shift = chromatic_number(&arc_shift(d).0.underline())?;
    let lower = lower_shift_bound(chi_d);
    let upper = upper_shift_bound(chi_d);
    Ok(LemRelReport {
        chi_d,
        chi_shift,
        lower,
        upper,
        pass: lower <= chi_shift && chi_shift <= upper,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformReport {
    /// `coloring_down` of an optimal colouring of `∂D` is proper.
    pub down_proper: bool,
    pub down_distinct_sets: usize,
    /// At most `2^k` distinct sets for a `k`-colouring of `∂D`.
    pub down_within_power: bool,
    /// `coloring_up` of the subset colouring is proper on `∂D`.
    pub up_proper: bool,
    pub up_colors: usize,
    /// The lifted colouring uses no more than the upper bound's `k` colours.
    pub up_within_bound: bool,
    /// `coloring_down(coloring_up(..))` is again a proper set colouring.
    pub round_trip_proper: bool,
}

impl TransformReport {
    pub fn pass(&self) -> bool {
        self.down_proper
            && self.down_within_power
            && self.up_proper
            && self.up_within_bound
            && self.round_trip_proper
    }
}

/// Runs both constructive transforms on solver-found colourings.
pub fn lemma_rel_transforms_check(d: &Digraph) -> Result<TransformReport> {
    let shift = arc_shift(d).0.underline();
    let shift_col = optimal_coloring(&shift)?;
    let down = coloring_down(d, &shift_col)?;
    let down_proper = down.is_proper_for(d);
    let down_distinct_sets = down.distinct_sets();
    let down_within_power = (down_distinct_sets as u128) <= 1u128 << shift_col.k;

    let d_col = optimal_coloring(&d.underline())?;
    let sets = subsets_from_coloring(&d_col);
    let up = coloring_up(d, &sets)?;
    let up_proper = is_proper_coloring(&shift, &up)?;
    let up_colors = up.colors_used();
    let up_within_bound = up.k <= upper_shift_bound(d_col.k);
    let round_trip_proper = if up_proper {
        coloring_down(d, &up)?.is_proper_for(d)
    } else {
        false
    };
    Ok(TransformReport {
        down_proper,
        down_distinct_sets,
        down_within_power,
        up_proper,
        up_colors,
        up_within_bound,
        round_trip_proper,
    })
}

/// `∂(∂(K⃗₄))` together with its vertex labels `(i, j, k)`, listed in
/// vertex order (lexicographic).
pub fn double_shift_k4() -> (Digraph, Vec<(usize, usize, usize)>) {
    let k4 = complete_digraph(4).expect("n = 4");
    let (d1, i1) = arc_shift(&k4);
    let (d2, i2) = arc_shift(&d1);
    let labels = i2
        .arcs()
        .iter()
        .map(|&(a, b)| {
            let (i, j) = i1.arc(a);
            let (j2, k) = i1.arc(b);
            debug_assert_eq!(j, j2);
            (i, j, k)
        })
        .collect();
    (d2, labels)
}

/// Colour of the triple `ijk`: `j` unless `j = 3`, in which case the least
/// element of `{0, 1, 2} \ {i, k}`.
pub fn schelp_color(i: usize, j: usize, k: usize) -> usize {
    if j != 3 {
        j
    } else {
        (0..3)
            .find(|&s| s != i && s != k)
            .expect("at most two excluded")
    }
}

/// The explicit 3-colouring of `underline(∂∂K⃗₄)`.
pub fn schelp_coloring() -> Coloring {
    let (_, labels) = double_shift_k4();
    Coloring {
        colors: labels
            .iter()
            .map(|&(i, j, k)| schelp_color(i, j, k))
            .collect(),
        k: 3,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchelpReport {
    pub vertices: usize,
    pub colors_used: usize,
    pub proper: bool,
    pub two_colorable: bool,
    pub chromatic_number: usize,
}

impl SchelpReport {
    pub fn pass(&self) -> bool {
        self.vertices == 36
            && self.colors_used == 3
            && self.proper
            && !self.two_colorable
            && self.chromatic_number == 3
    }
}

pub fn schelp_check() -> Result<SchelpReport> {
    let (d, _) = double_shift_k4();
    let g = d.underline();
    let col = schelp_coloring();
    Ok(SchelpReport {
        vertices: g.n(),
        colors_used: col.colors_used(),
        proper: is_proper_coloring(&g, &col)?,
        two_colorable: k_colorable(&g, 2)?.is_some(),
        chromatic_number: chromatic_number(&g)?,
    })
}

/// Pulls the explicit colouring back along `∂∂D -> ∂∂K⃗₄`, the map induced
/// by a proper colouring of `D` with at most four colours.
pub fn pull_back_schelp(d: &Digraph, four_coloring: &Coloring) -> Result<Coloring> {
    let u = d.underline();
    if four_coloring.k > 4 || !is_proper_coloring(&u, four_coloring)? {
        return Err(Error::Precondition(
            "need a proper coloring with at most 4 colors".into(),
        ));
    }
    let (d1, i1) = arc_shift(d);
    let (_, i2) = arc_shift(&d1);
    let phi = &four_coloring.colors;
    let colors = i2
        .arcs()
        .iter()
        .map(|&(a, b)| {
            let (x, y) = i1.arc(a);
            let (_, z) = i1.arc(b);
            schelp_color(phi[x], phi[y], phi[z])
        })
        .collect();
    Ok(Coloring { colors, k: 3 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorialityReport {
    /// Arcs in the symmetric difference of `∂(D1×D2)` (relabelled) and
    /// `∂D1 × ∂D2`.
    pub product_mismatches: usize,
    /// Same for `∂(D⁻¹)` against `(∂D)⁻¹`, summed over both factors.
    pub reverse_mismatches: usize,
}

impl FunctorialityReport {
    pub fn pass(&self) -> bool {
        self.product_mismatches == 0 && self.reverse_mismatches == 0
    }
}

fn arc_symmetric_difference(a: &BTreeSet<(usize, usize)>, d: &Digraph) -> usize {
    let b: BTreeSet<(usize, usize)> = d.arcs().collect();
    a.symmetric_difference(&b).count()
}

fn reverse_mismatches(d: &Digraph) -> usize {
    let (shift, index) = arc_shift(d);
    let (shift_rev, index_rev) = arc_shift(&d.reverse());
    // vertex (y, x) of ∂(D⁻¹) corresponds to arc (x, y) of D
    let label = |w: usize| {
        let (y, x) = index_rev.arc(w);
        index.index((x, y)).expect("reversed arc exists")
    };
    let relabelled: BTreeSet<(usize, usize)> = shift_rev
        .arcs()
        .map(|(w1, w2)| (label(w1), label(w2)))
        .collect();
    arc_symmetric_difference(&relabelled, &shift.reverse())
}

/// Equality checks of `∂(D1 × D2) = ∂D1 × ∂D2` and `∂(D⁻¹) = (∂D)⁻¹`
/// under the canonical arc bijections.
pub fn functoriality_check(d1: &Digraph, d2: &Digraph) -> FunctorialityReport {
    let m = d2.n();
    let product = digraph_product(d1, d2);
    let (shift_p, index_p) = arc_shift(&product);
    let (shift1, index1) = arc_shift(d1);
    let (shift2, index2) = arc_shift(d2);
    let arcs2 = index2.len();
    let label = |w: usize| {
        let (u, u2) = index_p.arc(w);
        let a1 = index1
            .index((u / m, u2 / m))
            .expect("first coordinate is an arc");
        let a2 = index2
            .index((u % m, u2 % m))
            .expect("second coordinate is an arc");
        a1 * arcs2 + a2
    };
    let relabelled: BTreeSet<(usize, usize)> = shift_p
        .arcs()
        .map(|(w1, w2)| (label(w1), label(w2)))
        .collect();
    let target = digraph_product(&shift1, &shift2);
    let mut product_mismatches = arc_symmetric_difference(&relabelled, &target);
    if shift_p.n() != target.n() {
        product_mismatches += shift_p.n().abs_diff(target.n());
    }
    FunctorialityReport {
        product_mismatches,
        reverse_mismatches: reverse_mismatches(d1) + reverse_mismatches(d2),
    }
}

/// Edges in the symmetric difference of `u(D1) × u(D2)` and
/// `u(D1 × D2) ∪ u(D1 × D2⁻¹)`.
pub fn underline_decomposition_mismatches(d1: &Digraph, d2: &Digraph) -> usize {
    let lhs: BTreeSet<(usize, usize)> = tensor_product(&d1.underline(), &d2.underline())
        .edges()
        .collect();
    let forward = digraph_product(d1, d2).underline();
    let backward = digraph_product(d1, &d2.reverse()).underline();
    let rhs: BTreeSet<(usize, usize)> = forward.edges().chain(backward.edges()).collect();
    lhs.symmetric_difference(&rhs).count()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundChainReport {
    /// `χ(D1 × D2)`
    pub a: usize,
    /// `χ(D1 × D2⁻¹)`
    pub b: usize,
    /// `χ(u(D1) × u(D2))`
    pub c: usize,
    pub pass: bool,
}

pub fn bound_chain_instance(d1: &Digraph, d2: &Digraph) -> Result<BoundChainReport> {
    let a = chromatic_number(&digraph_product(d1, d2).underline())?;
    let b = chromatic_number(&digraph_product(d1, &d2.reverse()).underline())?;
    let c = chromatic_number(&tensor_product(&d1.underline(), &d2.underline()))?;
    Ok(BoundChainReport {
        a,
        b,
        c,
        pass: c <= a * b,
    })
}

/// `χ` of a digraph, read off its underlying graph.
pub fn digraph_chromatic_number(d: &Digraph) -> Result<usize> {
    chromatic_number(&d.underline())
}

/// Underlying graph of `∂(D)`.
pub fn shift_underline(d: &Digraph) -> Graph {
    arc_shift(d).0.underline()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_arc() -> Digraph {
        Digraph::from_arcs(2, [(0, 1)]).unwrap()
    }

    #[test]
    fn shift_examples() {
        let (s, idx) = arc_shift(&complete_digraph(2).unwrap());
        assert_eq!(idx.arcs(), &[(0, 1), (1, 0)]);
        assert_eq!(s.arcs().collect::<Vec<_>>(), vec![(0, 1), (1, 0)]);
        let (s, _) = arc_shift(&single_arc());
        assert_eq!((s.n(), s.arc_count()), (1, 0));
        let (s, idx) = arc_shift(&complete_digraph(4).unwrap());
        assert_eq!(s.n(), 12);
        for w in 0..12 {
            assert_eq!(s.out_neighbors(w).len(), 3);
            let (_, y) = idx.arc(w);
            assert!(s.out_neighbors(w).iter().all(|&w2| idx.arc(w2).0 == y));
        }
    }

    #[test]
    fn down_on_digon() {
        let d = complete_digraph(2).unwrap();
        let sc = coloring_down(&d, &Coloring::new(vec![0, 1], 2).unwrap()).unwrap();
        assert_eq!(sc.sets, vec![BTreeSet::from([0]), BTreeSet::from([1])]);
        assert!(coloring_down(&d, &Coloring::new(vec![0, 0], 2).unwrap()).is_err());
    }

    #[test]
    fn down_sink_gets_empty_set() {
        let d = Digraph::from_arcs(3, [(0, 1), (1, 2)]).unwrap();
        let sc = coloring_down(&d, &Coloring::new(vec![0, 1], 2).unwrap()).unwrap();
        assert!(sc.sets[2].is_empty());
        assert!(sc.is_proper_for(&d));
    }

    #[test]
    fn up_on_digon() {
        let d = complete_digraph(2).unwrap();
        let sc = SetColoring {
            sets: vec![BTreeSet::from([0]), BTreeSet::from([1])],
            k: 2,
            size: Some(1),
        };
        let col = coloring_up(&d, &sc).unwrap();
        assert_eq!(col.colors, vec![1, 0]);
        assert!(is_proper_coloring(&shift_underline(&d), &col).unwrap());
        let uneven = SetColoring {
            sets: vec![BTreeSet::from([0]), BTreeSet::from([0, 1])],
            k: 2,
            size: None,
        };
        assert!(coloring_up(&d, &uneven).is_err());
        let clash = SetColoring {
            sets: vec![BTreeSet::from([0]), BTreeSet::from([0])],
            k: 2,
            size: Some(1),
        };
        assert!(coloring_up(&d, &clash).is_err());
    }

    #[test]
    fn bounds_formulas() {
        assert_eq!((lower_shift_bound(1), upper_shift_bound(1)), (0, 0));
        assert_eq!((lower_shift_bound(2), upper_shift_bound(2)), (1, 2));
        assert_eq!((lower_shift_bound(4), upper_shift_bound(4)), (2, 4));
        assert_eq!(upper_shift_bound(3), 3);
        assert_eq!(upper_shift_bound(7), 5);
        assert_eq!(binomial(4, 2), 6);
    }

    #[test]
    fn lem_rel_on_complete_digraphs() {
        let r = lemma_rel_bounds_check(&complete_digraph(4).unwrap()).unwrap();
        assert_eq!((r.chi_d, r.lower, r.upper), (4, 2, 4));
        assert!(r.pass);
        let r = lemma_rel_bounds_check(&complete_digraph(2).unwrap()).unwrap();
        assert_eq!((r.chi_d, r.chi_shift, r.lower, r.upper), (2, 2, 1, 2));
        assert!(lemma_rel_transforms_check(&complete_digraph(4).unwrap())
            .unwrap()
            .pass());
    }

    #[test]
    fn schelp_examples() {
        let (d, labels) = double_shift_k4();
        assert_eq!(labels.len(), 36);
        assert_eq!(d.n(), 36);
        assert!(labels.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(schelp_color(0, 1, 2), 1);
        assert_eq!(schelp_color(0, 3, 0), 1);
        let report = schelp_check().unwrap();
        assert!(report.pass(), "{report:?}");
    }

    #[test]
    fn functoriality_small() {
        let k2 = complete_digraph(2).unwrap();
        assert!(functoriality_check(&k2, &k2).pass());
        let k3 = complete_digraph(3).unwrap();
        assert_eq!(reverse_mismatches(&k3), 0);
        let path = Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 0), (0, 2)]).unwrap();
        assert!(functoriality_check(&path, &k3).pass());
    }

    #[test]
    fn decomposition_and_chain() {
        let k3 = complete_digraph(3).unwrap();
        assert_eq!(underline_decomposition_mismatches(&k3, &k3), 0);
        let r = bound_chain_instance(&k3, &k3).unwrap();
        assert_eq!(r.c, 3);
        assert!(r.pass);
        let a = single_arc();
        let r = bound_chain_instance(&a, &a).unwrap();
        assert_eq!(r.c, 2);
        assert!(r.pass);
    }

    #[test]
    fn pull_back_on_k4() {
        let k4 = complete_digraph(4).unwrap();
        let id = Coloring::new(vec![0, 1, 2, 3], 4).unwrap();
        assert_eq!(pull_back_schelp(&k4, &id).unwrap(), schelp_coloring());
    }
}
