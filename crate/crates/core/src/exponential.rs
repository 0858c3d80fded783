//! Exponential graphs `K_c^G` and the blow-up maps used against
//! Hedetniemi's conjecture.
//!
//! A vertex of `K_c^G` is a map `V(G) -> {0..c-1}`. Two maps `f`, `g` are
//! adjacent when no edge `xy` of the base (and no loop, taking `y = x`) has
//! `f(x) = g(y)`. Materialised exponential graphs number their maps by the
//! base-`c` digits of the vertex index, least significant digit first.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{
    add_loops, blowup, distances, tensor_product, Coloring, Distance, Graph, GraphRecord,
};
use crate::solvers::{is_proper_coloring, k_colorable};

pub const DEFAULT_MAX_EXP_VERTICES: u128 = 200_000;
pub const DEFAULT_MAX_EXP_PAIRS: u128 = 50_000_000;

/// Size guards for materialisation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpCaps {
    pub max_vertices: u128,
    /// Bound on the number of unordered map pairs (including `f = g`) whose
    /// adjacency gets evaluated.
    pub max_pairs: u128,
}

impl Default for ExpCaps {
    fn default() -> Self {
        ExpCaps {
            max_vertices: DEFAULT_MAX_EXP_VERTICES,
            max_pairs: DEFAULT_MAX_EXP_PAIRS,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpContext {
    base: Graph,
    c: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExpMap {
    values: Vec<usize>,
}

impl ExpMap {
    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn get(&self, x: usize) -> usize {
        self.values[x]
    }

    pub fn image(&self) -> BTreeSet<usize> {
        self.values.iter().copied().collect()
    }
}

impl ExpContext {
    pub fn new(base: Graph, c: usize) -> Result<Self> {
        if c == 0 {
            return Err(Error::InvalidParameter(
                "palette size c must be >= 1".into(),
            ));
        }
        Ok(ExpContext { base, c })
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn palette(&self) -> usize {
        self.c
    }

    pub fn map(&self, values: Vec<usize>) -> Result<ExpMap> {
        if values.len() != self.base.n() {
            return Err(Error::ContextMismatch(format!(
                "map has {} values, base has {} vertices",
                values.len(),
                self.base.n()
            )));
        }
        if let Some(&v) = values.iter().find(|&&v| v >= self.c) {
            return Err(Error::ContextMismatch(format!(
                "value {v} outside palette of size {}",
                self.c
            )));
        }
        Ok(ExpMap { values })
    }

    fn check(&self, f: &ExpMap) -> Result<()> {
        if f.values.len() != self.base.n() || f.values.iter().any(|&v| v >= self.c) {
            return Err(Error::ContextMismatch(format!(
                "map {:?} is not a map from {} vertices into {} colors",
                f.values,
                self.base.n(),
                self.c
            )));
        }
        Ok(())
    }

    /// `c^|V(base)|`, or `None` when it overflows.
    pub fn vertex_count(&self) -> Option<u128> {
        (self.c as u128).checked_pow(u32::try_from(self.base.n()).ok()?)
    }

    pub fn map_at(&self, mut index: u128) -> ExpMap {
        let c = self.c as u128;
        let values = (0..self.base.n())
            .map(|_| {
                let d = (index % c) as usize;
                index /= c;
                d
            })
            .collect();
        ExpMap { values }
    }

    pub fn index_of(&self, f: &ExpMap) -> u128 {
        f.values
            .iter()
            .rev()
            .fold(0u128, |acc, &d| acc * self.c as u128 + d as u128)
    }
}

/// Pairs `(x, y)` (both orientations of every edge, plus `(x, x)` for each
/// loop) that must avoid `f(x) = g(y)`.
fn constraint_pairs(base: &Graph) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = base.edges().flat_map(|(u, v)| [(u, v), (v, u)]).collect();
    pairs.extend(base.loop_vertices().map(|x| (x, x)));
    pairs
}

fn adjacent_raw(pairs: &[(usize, usize)], f: &[usize], g: &[usize]) -> bool {
    pairs.iter().all(|&(x, y)| f[x] != g[y])
}

/// Adjacency in `K_c^G`; with `f = g` it decides whether `f` carries a loop.
pub fn exp_adjacent(ctx: &ExpContext, f: &ExpMap, g: &ExpMap) -> Result<bool> {
    ctx.check(f)?;
    ctx.check(g)?;
    Ok(adjacent_raw(
        &constraint_pairs(&ctx.base),
        &f.values,
        &g.values,
    ))
}

/// The first edge-orientation `(x, y)` with `f(x) = g(y)`, if any.
pub fn adjacency_witness(
    ctx: &ExpContext,
    f: &ExpMap,
    g: &ExpMap,
) -> Result<Option<(usize, usize)>> {
    ctx.check(f)?;
    ctx.check(g)?;
    Ok(constraint_pairs(&ctx.base)
        .into_iter()
        .find(|&(x, y)| f.values[x] == g.values[y]))
}

pub fn constant_map(ctx: &ExpContext, i: usize) -> Result<ExpMap> {
    if i >= ctx.c {
        return Err(Error::InvalidParameter(format!(
            "constant color {i} outside palette of size {}",
            ctx.c
        )));
    }
    Ok(ExpMap {
        values: vec![i; ctx.base.n()],
    })
}

fn check_caps(ctx: &ExpContext, caps: &ExpCaps) -> Result<usize> {
    let size = ctx.vertex_count().ok_or(Error::CapExceeded {
        what: "exponential graph vertex count",
        size: u128::MAX,
        cap: caps.max_vertices,
        flag: "--max-exp-vertices",
    })?;
    if size > caps.max_vertices {
        return Err(Error::CapExceeded {
            what: "exponential graph vertex count",
            size,
            cap: caps.max_vertices,
            flag: "--max-exp-vertices",
        });
    }
    let pairs = size * (size + 1) / 2;
    if pairs > caps.max_pairs {
        return Err(Error::CapExceeded {
            what: "exponential graph pair budget",
            size: pairs,
            cap: caps.max_pairs,
            flag: "--max-exp-pairs",
        });
    }
    Ok(size as usize)
}

/// Builds `K_c^G` explicitly. Vertex `t` is [`ExpContext::map_at`]`(t)`.
pub fn materialize_exponential(ctx: &ExpContext, caps: &ExpCaps) -> Result<Graph> {
    let size = check_caps(ctx, caps)?;
    let n = ctx.base.n();
    let maps: Vec<usize> = (0..size as u128)
        .flat_map(|t| ctx.map_at(t).values)
        .collect();
    let pairs = constraint_pairs(&ctx.base);
    let row = |t: usize| &maps[t * n..(t + 1) * n];
    let mut adj = vec![Vec::new(); size];
    let mut loops = vec![false; size];
    for t in 0..size {
        let f = row(t);
        loops[t] = adjacent_raw(&pairs, f, f);
        for s in t + 1..size {
            if adjacent_raw(&pairs, f, row(s)) {
                adj[t].push(s);
                adj[s].push(t);
            }
        }
    }
    Ok(Graph::from_parts(adj, loops))
}

/// The graph with the same edges and every loop removed.
pub fn strip_loops(g: &Graph) -> Graph {
    Graph::from_parts(
        (0..g.n()).map(|v| g.neighbors(v).to_vec()).collect(),
        vec![false; g.n()],
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniversalReport {
    pub c: usize,
    /// Proper `c`-colouring `Ψ` of `G × H` used to build `u ↦ f_u`.
    pub product_coloring: Coloring,
    /// `u ↦ f_u` with `f_u(v) = Ψ(v, u)`, as materialised vertex indices.
    pub induced_map: Vec<usize>,
    pub induced_is_homomorphism: bool,
    /// `(x, f) ↦ f(x)` is a proper colouring of `G × K_c^G`.
    pub evaluation_is_proper: bool,
}

impl UniversalReport {
    pub fn pass(&self) -> bool {
        self.induced_is_homomorphism && self.evaluation_is_proper
    }
}

/// Verifies on an instance that a `c`-colouring of `G × H` factors through
/// `K_c^G`, and that evaluation colours `G × K_c^G`.
pub fn universal_property_check(
    g: &Graph,
    h: &Graph,
    c: usize,
    caps: &ExpCaps,
) -> Result<UniversalReport> {
    g.require_loopless()?;
    h.require_loopless()?;
    let product = tensor_product(g, h);
    let Some(psi) = k_colorable(&product, c)? else {
        return Err(Error::Precondition(format!(
            "G x H is not {c}-colorable, so no coloring Psi exists"
        )));
    };
    let ctx = ExpContext::new(g.clone(), c)?;
    let exp = materialize_exponential(&ctx, caps)?;
    let m = h.n();
    let induced: Vec<usize> = (0..m)
        .map(|u| {
            let f = ExpMap {
                values: (0..g.n()).map(|v| psi.colors[v * m + u]).collect(),
            };
            ctx.index_of(&f) as usize
        })
        .collect();
    let induced_is_homomorphism = h.edges().all(|(u, w)| {
        exp.has_edge(induced[u], induced[w])
            || (induced[u] == induced[w] && exp.has_loop(induced[u]))
    });

    let ge = tensor_product(g, &exp);
    let size = exp.n();
    let eval = Coloring {
        colors: (0..g.n() * size)
            .map(|idx| {
                let (x, t) = (idx / size, idx % size);
                ctx.map_at(t as u128).values[x]
            })
            .collect(),
        k: c,
    };
    let evaluation_is_proper = is_proper_coloring(&ge, &eval)?;
    Ok(UniversalReport {
        c,
        product_coloring: psi,
        induced_map: induced,
        induced_is_homomorphism,
        evaluation_is_proper,
    })
}

/// A map over `G[K_q]` with `(x, i)` at index `x * q + i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupExpMap {
    pub base: Graph,
    pub q: usize,
    pub map: ExpMap,
    pub simple: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupExpMapRecord {
    pub graph: GraphRecord,
    pub q: usize,
    pub indexing: String,
    pub simple: bool,
    pub values: Vec<usize>,
}

impl From<&BlowupExpMap> for BlowupExpMapRecord {
    fn from(b: &BlowupExpMap) -> Self {
        BlowupExpMapRecord {
            graph: b.base.clone().into(),
            q: b.q,
            indexing: "x*q+i".into(),
            simple: b.simple,
            values: b.map.values.clone(),
        }
    }
}

impl BlowupExpMap {
    fn new(base: &Graph, q: usize, values: Vec<usize>) -> Self {
        let simple = values
            .chunks(q)
            .all(|fiber| fiber.iter().all(|&v| v == fiber[0]));
        BlowupExpMap {
            base: base.clone(),
            q,
            map: ExpMap { values },
            simple,
        }
    }

    pub fn at(&self, x: usize, i: usize) -> usize {
        self.map.values[x * self.q + i]
    }

    pub fn image(&self) -> BTreeSet<usize> {
        self.map.image()
    }

    /// Per-vertex values of a simple map.
    pub fn simple_values(&self) -> Option<Vec<usize>> {
        self.simple
            .then(|| (0..self.base.n()).map(|x| self.at(x, 0)).collect())
    }
}

/// Palette size `4q + 2` used by the blow-up construction.
pub fn shitov_palette(q: usize) -> usize {
    4 * q + 2
}

/// `K_{4q+2}^{G[K_q]}` as a context.
pub fn shitov_context(g: &Graph, q: usize) -> Result<ExpContext> {
    ExpContext::new(blowup(g, q)?, shitov_palette(q))
}

fn secondary_block(q: usize) -> std::ops::RangeInclusive<usize> {
    2 * q..=4 * q + 1
}

fn check_secondary(name: &str, value: usize, q: usize) -> Result<()> {
    if !secondary_block(q).contains(&value) {
        return Err(Error::InvalidParameter(format!(
            "{name}={value} must lie in the secondary block {}..={} for q={q}",
            2 * q,
            4 * q + 1
        )));
    }
    Ok(())
}

fn check_mu_args(g: &Graph, v: usize, q: usize) -> Result<Vec<Distance>> {
    g.require_loopless()?;
    if q == 0 {
        return Err(Error::InvalidParameter("q must be >= 1".into()));
    }
    distances(g, v)
}

/// `μ_{v,t}` over `G[K_q]`: fibre index `i` on vertices at distance 0 or 2
/// from `v`, `q + i` at distance 1, and `t` at distance 3 or more
/// (unreachable included).
pub fn shitov_mu(g: &Graph, v: usize, q: usize, t: usize) -> Result<BlowupExpMap> {
    let dist = check_mu_args(g, v, q)?;
    check_secondary("t", t, q)?;
    let values = (0..g.n())
        .flat_map(|x| {
            let d = dist[x];
            (0..q).map(move |i| match d {
                Distance::Finite(0) | Distance::Finite(2) => i,
                Distance::Finite(1) => q + i,
                _ => t,
            })
        })
        .collect();
    Ok(BlowupExpMap::new(g, q, values))
}

/// The simple map `θ`: `t` within distance 1 of `v`, `b` elsewhere.
pub fn shitov_theta(g: &Graph, v: usize, q: usize, b: usize, t: usize) -> Result<BlowupExpMap> {
    let dist = check_mu_args(g, v, q)?;
    if b == t {
        return Err(Error::InvalidParameter(format!(
            "b and t must differ, both are {b}"
        )));
    }
    check_secondary("b", b, q)?;
    check_secondary("t", t, q)?;
    let values = (0..g.n())
        .flat_map(|x| {
            let val = if dist[x] <= Distance::Finite(1) { t } else { b };
            std::iter::repeat_n(val, q)
        })
        .collect();
    Ok(BlowupExpMap::new(g, q, values))
}

/// Default `(b, t)` for `θ`: `b = 2q + 1`, `t = 2q`.
pub fn default_theta_colors(q: usize) -> (usize, usize) {
    (2 * q + 1, 2 * q)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuViolation {
    pub t: usize,
    pub t_prime: usize,
    /// Blow-up edge `((x, i), (y, j))` with `μ_t(x, i) = μ_t'(y, j)`.
    pub edge: [(usize, usize); 2],
    pub value: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuCliqueReport {
    pub vertex: usize,
    pub q: usize,
    pub pass: bool,
    pub pairs_checked: usize,
    pub violations: Vec<MuViolation>,
}

/// Checks that `{μ_{v,t} : t in the secondary block}` is a clique of
/// `K_{4q+2}^{G[K_q]}`, recording one witness edge per non-adjacent pair.
pub fn verify_mu_clique(g: &Graph, v: usize, q: usize) -> Result<MuCliqueReport> {
    let ctx = shitov_context(g, q)?;
    let mus: Vec<BlowupExpMap> = secondary_block(q)
        .map(|t| shitov_mu(g, v, q, t))
        .collect::<Result<_>>()?;
    let ts: Vec<usize> = secondary_block(q).collect();
    let mut violations = Vec::new();
    let mut pairs_checked = 0;
    for a in 0..mus.len() {
        for b in a + 1..mus.len() {
            pairs_checked += 1;
            if let Some((u, w)) = adjacency_witness(&ctx, &mus[a].map, &mus[b].map)? {
                violations.push(MuViolation {
                    t: ts[a],
                    t_prime: ts[b],
                    edge: [(u / q, u % q), (w / q, w % q)],
                    value: mus[a].map.values[u],
                });
            }
        }
    }
    Ok(MuCliqueReport {
        vertex: v,
        q,
        pass: violations.is_empty(),
        pairs_checked,
        violations,
    })
}

/// Copies per-vertex values of `G` onto every fibre of `G[K_q]`.
pub fn lift_simple(values: &[usize], q: usize) -> ExpMap {
    ExpMap {
        values: values
            .iter()
            .flat_map(|&v| std::iter::repeat_n(v, q))
            .collect(),
    }
}

/// Adjacency of two simple maps read off `G` alone: no edge `xy` with
/// `φ(x) = ψ(y)` and no vertex with `φ(x) = ψ(x)`.
pub fn simple_adjacent(g: &Graph, phi: &[usize], psi: &[usize]) -> bool {
    g.edges().all(|(x, y)| phi[x] != psi[y] && phi[y] != psi[x])
        && (0..g.n()).all(|x| phi[x] != psi[x])
}

/// Materialises `K_c^{G[K_q]}` and `K_c^{G°}` and checks that the simple
/// maps induce exactly `K_c^{G°}` under the value-copy bijection.
pub fn simple_subgraph_matches_looped(
    g: &Graph,
    c: usize,
    q: usize,
    caps: &ExpCaps,
) -> Result<bool> {
    let looped = ExpContext::new(add_loops(g), c)?;
    let full = ExpContext::new(blowup(g, q)?, c)?;
    let small = materialize_exponential(&looped, caps)?;
    let big = materialize_exponential(&full, caps)?;
    let simple_indices: Vec<usize> = (0..small.n() as u128)
        .map(|t| full.index_of(&lift_simple(looped.map_at(t).values(), q)) as usize)
        .collect();
    Ok(big.induced(&simple_indices)? == small)
}

/// Permutes colours so that the constant map `g_i` receives colour `i`.
pub fn normalize_on_constants(ctx: &ExpContext, coloring: &Coloring) -> Result<Coloring> {
    let c = ctx.c;
    let mut perm = vec![usize::MAX; coloring.k.max(c)];
    for i in 0..c {
        let idx = ctx.index_of(&constant_map(ctx, i)?) as usize;
        let col = *coloring.colors.get(idx).ok_or_else(|| {
            Error::Precondition("coloring does not cover the constant maps".into())
        })?;
        if perm[col] != usize::MAX {
            return Err(Error::Precondition(format!(
                "constant maps g_{} and g_{i} share color {col}",
                perm[col]
            )));
        }
        perm[col] = i;
    }
    let mut next = c;
    for slot in perm.iter_mut() {
        if *slot == usize::MAX {
            *slot = next;
            next += 1;
        }
    }
    Ok(Coloring {
        colors: coloring.colors.iter().map(|&x| perm[x]).collect(),
        k: coloring.k.max(c),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageCheck {
    /// Every map's colour lies in its image.
    pub holds: bool,
    /// Properness of the supplied colouring on the non-loop edges.
    pub proper: bool,
    pub maps_checked: usize,
    /// First map (index, values, colour) whose colour is outside its image.
    pub witness: Option<(usize, Vec<usize>, usize)>,
}

/// Checks that a colouring of materialised `K_c^G`, normalised so `g_i` has
/// colour `i`, colours every map with a value from its image.
pub fn observation_image_check(
    ctx: &ExpContext,
    coloring: &Coloring,
    caps: &ExpCaps,
) -> Result<ImageCheck> {
    let exp = materialize_exponential(ctx, caps)?;
    if coloring.len() != exp.n() {
        return Err(Error::Precondition(format!(
            "coloring covers {} maps, K_c^G has {}",
            coloring.len(),
            exp.n()
        )));
    }
    for i in 0..ctx.c {
        let idx = ctx.index_of(&constant_map(ctx, i)?) as usize;
        if coloring.colors[idx] != i {
            return Err(Error::Precondition(format!(
                "constant map g_{i} has color {}, expected {i}",
                coloring.colors[idx]
            )));
        }
    }
    let proper = is_proper_coloring(&strip_loops(&exp), coloring)?;
    let witness = (0..exp.n()).find_map(|t| {
        let f = ctx.map_at(t as u128);
        let col = coloring.colors[t];
        (!f.values.contains(&col)).then_some((t, f.values, col))
    });
    Ok(ImageCheck {
        holds: witness.is_none(),
        proper,
        maps_checked: exp.n(),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::graph::{complete_graph, cycle, path};
    use crate::solvers::{chromatic_number, optimal_coloring};

    fn ctx(g: Graph, c: usize) -> ExpContext {
        ExpContext::new(g, c).unwrap()
    }

    #[test]
    fn k2_base_by_hand() {
        let cx = ctx(complete_graph(2).unwrap(), 2);
        let f = cx.map(vec![0, 0]).unwrap();
        let g = cx.map(vec![0, 1]).unwrap();
        assert!(!exp_adjacent(&cx, &f, &g).unwrap());
        let exp = materialize_exponential(&cx, &ExpCaps::default()).unwrap();
        assert_eq!(exp.n(), 4);
        // index 0 = (0,0), 3 = (1,1); 1 = (1,0), 2 = (0,1) are proper colourings
        assert_eq!(exp.edges().collect::<Vec<_>>(), vec![(0, 3)]);
        assert_eq!(exp.loop_vertices().collect::<Vec<_>>(), vec![1, 2]);
    }

    #[test]
    fn context_errors() {
        let cx = ctx(complete_graph(2).unwrap(), 2);
        assert!(cx.map(vec![0]).is_err());
        assert!(cx.map(vec![0, 2]).is_err());
        let other = ctx(complete_graph(3).unwrap(), 2)
            .map(vec![0, 0, 0])
            .unwrap();
        assert!(matches!(
            exp_adjacent(&cx, &other, &other),
            Err(Error::ContextMismatch(_))
        ));
        assert!(constant_map(&cx, 2).is_err());
        assert!(ExpContext::new(Graph::empty(1), 0).is_err());
    }

    #[test]
    fn disjoint_images_adjacent() {
        let cx = ctx(catalog::petersen(), 4);
        let f = cx.map((0..10).map(|i| i % 2).collect()).unwrap();
        let g = cx.map((0..10).map(|i| 2 + i % 2).collect()).unwrap();
        assert!(exp_adjacent(&cx, &f, &g).unwrap());
    }

    #[test]
    fn constant_maps() {
        let cx = ctx(cycle(5).unwrap(), 4);
        for i in 0..4 {
            let gi = constant_map(&cx, i).unwrap();
            assert_eq!(gi.image(), BTreeSet::from([i]));
            for j in 0..4 {
                if i != j {
                    assert!(exp_adjacent(&cx, &gi, &constant_map(&cx, j).unwrap()).unwrap());
                }
            }
            let phi = cx
                .map(vec![
                    (i + 1) % 4,
                    (i + 2) % 4,
                    (i + 1) % 4,
                    (i + 3) % 4,
                    (i + 2) % 4,
                ])
                .unwrap();
            assert!(exp_adjacent(&cx, &gi, &phi).unwrap());
        }
    }

    #[test]
    fn loop_iff_proper() {
        let base = cycle(5).unwrap();
        let cx = ctx(base.clone(), 3);
        let exp = materialize_exponential(&cx, &ExpCaps::default()).unwrap();
        for t in 0..exp.n() {
            let f = cx.map_at(t as u128);
            let col = Coloring::new(f.values().to_vec(), 3).unwrap();
            assert_eq!(exp.has_loop(t), is_proper_coloring(&base, &col).unwrap());
        }
    }

    #[test]
    fn k4_base_c3() {
        let cx = ctx(complete_graph(4).unwrap(), 3);
        let exp = materialize_exponential(&cx, &ExpCaps::default()).unwrap();
        assert_eq!(exp.n(), 81);
        assert!(!exp.has_loops());
        assert_eq!(chromatic_number(&exp).unwrap(), 3);
    }

    #[test]
    fn caps_are_enforced() {
        let cx = ctx(catalog::heawood(), 6);
        let err = materialize_exponential(&cx, &ExpCaps::default()).unwrap_err();
        assert!(err.is_cap());
        let tight = ExpCaps {
            max_vertices: 1000,
            max_pairs: 10,
        };
        let err = materialize_exponential(&ctx(complete_graph(3).unwrap(), 2), &tight).unwrap_err();
        assert!(matches!(
            err,
            Error::CapExceeded {
                what: "exponential graph pair budget",
                ..
            }
        ));
    }

    #[test]
    fn index_round_trip() {
        let cx = ctx(path(4), 3);
        for t in 0..81u128 {
            assert_eq!(cx.index_of(&cx.map_at(t)), t);
        }
        assert_eq!(cx.map_at(1).values(), &[1, 0, 0, 0]);
    }

    #[test]
    fn universal_property_instances() {
        let caps = ExpCaps::default();
        let k2 = complete_graph(2).unwrap();
        let k3 = complete_graph(3).unwrap();
        assert!(universal_property_check(&k2, &k3, 2, &caps).unwrap().pass());
        let c5 = cycle(5).unwrap();
        assert!(universal_property_check(&c5, &c5, 3, &caps).unwrap().pass());
        assert!(matches!(
            universal_property_check(&k3, &k3, 2, &caps),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn mu_values_on_heawood() {
        let h = catalog::heawood();
        let mu = shitov_mu(&h, 0, 1, 2).unwrap();
        let d = distances(&h, 0).unwrap();
        for (x, dx) in d.iter().enumerate() {
            let expected = match dx.finite().unwrap() {
                0 | 2 => 0,
                1 => 1,
                _ => 2,
            };
            assert_eq!(mu.at(x, 0), expected, "vertex {x}");
        }
        let mu2 = shitov_mu(&h, 0, 2, 7).unwrap();
        assert!(!mu2.simple);
        assert!(mu2.image().is_subset(&BTreeSet::from([0, 1, 2, 3, 7])));
        assert!(shitov_mu(&h, 0, 1, 1).is_err());
        assert!(shitov_mu(&h, 0, 1, 6).is_err());
        assert!(shitov_mu(&h, 14, 1, 2).is_err());
    }

    #[test]
    fn mu_on_disconnected_base_uses_t() {
        let g = Graph::from_edges(4, [(0, 1)]).unwrap();
        let mu = shitov_mu(&g, 0, 1, 3).unwrap();
        assert_eq!(mu.map.values(), &[0, 1, 3, 3]);
    }

    #[test]
    fn mu_clique_on_heawood() {
        let h = catalog::heawood();
        for q in 1..=3 {
            let r = verify_mu_clique(&h, 0, q).unwrap();
            assert!(r.pass, "q={q}: {:?}", r.violations);
            assert_eq!(r.pairs_checked, (2 * q + 2) * (2 * q + 1) / 2);
        }
    }

    #[test]
    fn mu_clique_negative_controls() {
        let r = verify_mu_clique(&cycle(5).unwrap(), 0, 1).unwrap();
        assert!(!r.pass);
        let w = &r.violations[0];
        // the conflict sits on the edge between the two distance-2 vertices
        let ends = [w.edge[0].0, w.edge[1].0];
        assert!(ends.contains(&2) && ends.contains(&3), "{w:?}");
        assert_eq!(w.value, 0);
        let r = verify_mu_clique(&complete_graph(4).unwrap(), 0, 1).unwrap();
        assert!(!r.pass);
        assert_eq!(r.violations[0].value, 1);
    }

    #[test]
    fn theta_adjacent_to_mu() {
        let h = catalog::heawood();
        for q in 1..=2 {
            let (b, t) = default_theta_colors(q);
            let theta = shitov_theta(&h, 0, q, b, t).unwrap();
            assert!(theta.simple);
            assert_eq!(theta.image(), BTreeSet::from([b, t]));
            let mu = shitov_mu(&h, 0, q, t).unwrap();
            let shared: BTreeSet<usize> =
                theta.image().intersection(&mu.image()).copied().collect();
            assert_eq!(shared, BTreeSet::from([t]));
            let cx = shitov_context(&h, q).unwrap();
            assert!(exp_adjacent(&cx, &theta.map, &mu.map).unwrap());
        }
        assert!(shitov_theta(&h, 0, 1, 3, 3).is_err());
        assert!(shitov_theta(&h, 0, 1, 1, 3).is_err());
    }

    #[test]
    fn simple_subgraph_is_looped_exponential() {
        let caps = ExpCaps::default();
        for g in [Graph::empty(1), complete_graph(2).unwrap(), path(3)] {
            for c in 2..=3 {
                // q = 1 has no fibre edges, so lifts of equal-valued maps stay adjacent
                assert!(!simple_subgraph_matches_looped(&g, c, 1, &caps).unwrap());
                if (c as u32).pow((g.n() * 2) as u32) <= 729 {
                    assert!(simple_subgraph_matches_looped(&g, c, 2, &caps).unwrap());
                }
            }
        }
    }

    #[test]
    fn observation_on_k4() {
        let caps = ExpCaps::default();
        let cx = ctx(complete_graph(4).unwrap(), 3);
        let exp = materialize_exponential(&cx, &caps).unwrap();
        let col = normalize_on_constants(&cx, &optimal_coloring(&exp).unwrap()).unwrap();
        let check = observation_image_check(&cx, &col, &caps).unwrap();
        assert!(check.holds && check.proper);

        let mut bad = col.clone();
        // map index 1 is (1,0,0,0); colour 2 is outside its image
        bad.colors[1] = 2;
        let check = observation_image_check(&cx, &bad, &caps).unwrap();
        assert!(!check.holds);
        assert_eq!(check.witness.unwrap().0, 1);

        let mut unnormalised = col;
        unnormalised.colors[0] = 1;
        assert!(matches!(
            observation_image_check(&cx, &unnormalised, &caps),
            Err(Error::Precondition(_))
        ));
    }
}
