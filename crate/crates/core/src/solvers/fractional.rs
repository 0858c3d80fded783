//! Exact fractional chromatic number.
//!
//! The covering LP `min Σ w_I  s.t.  Σ_{I ∋ v} w_I >= 1` over the maximal
//! independent sets is solved with the rational simplex and column
//! generation, pricing against the full enumerated family. The LP dual is a
//! fractional clique; both sides are re-checked before the value is
//! returned, so a result is always a certified optimum.

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::cliques::maximal_independent_sets;
use super::lp::{CoveringLp, LpOutcome, LpSolution, Rational};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_MAX_LP_VERTICES: usize = 30;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "FractionalRecord", try_from = "FractionalRecord")]
pub struct FractionalColoring {
    /// `(independent set, weight)` pairs with strictly positive weights.
    pub sets: Vec<(Vec<usize>, Rational)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedSet {
    pub vertices: Vec<usize>,
    pub numerator: String,
    pub denominator: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionalRecord {
    pub value: String,
    pub sets: Vec<WeightedSet>,
}

impl From<FractionalColoring> for FractionalRecord {
    fn from(fc: FractionalColoring) -> Self {
        FractionalRecord {
            value: fc.value().to_string(),
            sets: fc
                .sets
                .into_iter()
                .map(|(vertices, w)| WeightedSet {
                    vertices,
                    numerator: w.numer().to_string(),
                    denominator: w.denom().to_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<FractionalRecord> for FractionalColoring {
    type Error = Error;

    fn try_from(r: FractionalRecord) -> Result<Self> {
        let parse = |s: &str| -> Result<num::BigInt> {
            s.parse()
                .map_err(|_| Error::Structured(format!("bad integer '{s}'")))
        };
        let sets = r
            .sets
            .into_iter()
            .map(|ws| {
                let d = parse(&ws.denominator)?;
                if d.is_zero() {
                    return Err(Error::Structured("zero denominator".into()));
                }
                Ok((ws.vertices, Rational::new(parse(&ws.numerator)?, d)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FractionalColoring { sets })
    }
}

impl FractionalColoring {
    pub fn value(&self) -> Rational {
        self.sets.iter().map(|(_, w)| w.clone()).sum()
    }

    /// Every set independent, weights non-negative, every vertex covered
    /// with total weight at least one.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let mut cover = vec![Rational::zero(); g.n()];
        for (set, w) in &self.sets {
            if w.is_negative() || set.iter().any(|&v| v >= g.n()) || !g.is_independent(set) {
                return false;
            }
            for &v in set {
                cover[v] += w;
            }
        }
        cover.iter().all(|c| *c >= Rational::one())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionalResult {
    pub value: Rational,
    pub coloring: FractionalColoring,
    /// Dual certificate: vertex weights summing to `value` with every
    /// independent set carrying total weight at most one.
    pub clique_weights: Vec<Rational>,
}

pub fn fractional_chromatic(g: &Graph) -> Result<FractionalResult> {
    fractional_chromatic_capped(g, DEFAULT_MAX_LP_VERTICES)
}

pub fn fractional_chromatic_capped(g: &Graph, max_vertices: usize) -> Result<FractionalResult> {
    g.require_loopless()?;
    let n = g.n();
    if n > max_vertices {
        return Err(Error::CapExceeded {
            what: "fractional-chromatic LP input graph",
            size: n as u128,
            cap: max_vertices as u128,
            flag: "--max-lp-vertices",
        });
    }
    if n == 0 {
        return Ok(FractionalResult {
            value: Rational::zero(),
            coloring: FractionalColoring { sets: Vec::new() },
            clique_weights: Vec::new(),
        });
    }
    let sets = maximal_independent_sets(g)?;
    let (columns, sol) = solve_by_column_generation(n, &sets);
    let coloring = FractionalColoring {
        sets: columns
            .into_iter()
            .map(|j| sets[j].clone())
            .zip(sol.x)
            .filter(|(_, w)| !w.is_zero())
            .collect(),
    };
    let result = FractionalResult {
        value: sol.value,
        coloring,
        clique_weights: sol.y,
    };
    assert!(
        certify(g, &result),
        "simplex returned an uncertified optimum"
    );
    Ok(result)
}

/// Columns added per pricing round.
const PRICING_BATCH: usize = 64;

/// Solves the covering LP over a growing subset of `sets`, adding the sets
/// whose dual weight exceeds one until none remain. Returns the chosen
/// column indices (in insertion order) and the final restricted solution.
fn solve_by_column_generation(n: usize, sets: &[Vec<usize>]) -> (Vec<usize>, LpSolution) {
    let one = Rational::one();
    let mut lp = CoveringLp::new(vec![one.clone(); n]);
    let mut columns: Vec<usize> = Vec::new();
    let add = |lp: &mut CoveringLp, j: usize, columns: &mut Vec<usize>| {
        columns.push(j);
        lp.add_column(
            sets[j].iter().map(|&v| (v, one.clone())).collect(),
            one.clone(),
        );
    };
    let mut covered = vec![false; n];
    for v in 0..n {
        if covered[v] {
            continue;
        }
        let j = sets
            .iter()
            .position(|s| s.binary_search(&v).is_ok())
            .expect("every vertex lies in a maximal independent set");
        for &u in &sets[j] {
            covered[u] = true;
        }
        add(&mut lp, j, &mut columns);
    }
    loop {
        let LpOutcome::Optimal(sol) = lp.solve() else {
            unreachable!("a covering LP with a cover is feasible and bounded below");
        };
        let mut violated: Vec<(Rational, usize)> = sets
            .iter()
            .enumerate()
            .filter_map(|(j, s)| {
                let w: Rational = s.iter().map(|&v| sol.y[v].clone()).sum();
                (w > one).then_some((w, j))
            })
            .collect();
        if violated.is_empty() {
            return (columns, sol);
        }
        violated.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
        for (_, j) in violated.into_iter().take(PRICING_BATCH) {
            add(&mut lp, j, &mut columns);
        }
    }
}

/// Independent re-check of a result: primal feasibility, dual feasibility
/// over every maximal independent set, and equal objective values.
pub fn certify(g: &Graph, r: &FractionalResult) -> bool {
    if !r.coloring.is_valid_for(g) || r.coloring.value() != r.value {
        return false;
    }
    if r.clique_weights.len() != g.n() || r.clique_weights.iter().any(|y| y.is_negative()) {
        return false;
    }
    let dual: Rational = r.clique_weights.iter().cloned().sum();
    if dual != r.value {
        return false;
    }
    match maximal_independent_sets(g) {
        Ok(sets) => sets.iter().all(|s| {
            s.iter()
                .map(|&v| r.clique_weights[v].clone())
                .sum::<Rational>()
                <= Rational::one()
        }),
        Err(_) => false,
    }
}
