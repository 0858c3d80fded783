//! Revised primal simplex over exact rationals for covering-form LPs.
//!
//! Solves `min c·x  s.t.  A x >= b, x >= 0` with `b >= 0`. Columns are
//! sparse and may be appended after a solve; the next solve starts from the
//! previous optimal basis. Every pivot choice has a fixed tie-break, so the
//! run (and therefore the returned vertex) is deterministic.

use num::{BigRational, One, Signed, Zero};

pub type Rational = BigRational;

/// Consecutive degenerate pivots tolerated under Dantzig's rule before the
/// solver falls back to Bland's rule, which cannot cycle.
const BLAND_AFTER: usize = 50;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Rational,
    /// Primal solution, one entry per column.
    pub x: Vec<Rational>,
    /// Optimal dual multipliers, one per row; `Aᵀy <= c`, `y >= 0`.
    pub y: Vec<Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Phase {
    Fresh,
    Feasible,
    Infeasible,
}

/// Variables are numbered `[surplus (m) | artificial (m) | columns]`.
#[derive(Clone, Debug)]
pub struct CoveringLp {
    m: usize,
    cols: Vec<Vec<(usize, Rational)>>,
    costs: Vec<Rational>,
    basis: Vec<usize>,
    binv: Vec<Vec<Rational>>,
    xb: Vec<Rational>,
    phase: Phase,
}

impl CoveringLp {
    pub fn new(b: Vec<Rational>) -> Self {
        assert!(
            b.iter().all(|v| !v.is_negative()),
            "right-hand side must be >= 0"
        );
        let m = b.len();
        let binv = (0..m)
            .map(|i| {
                let mut row = vec![Rational::zero(); m];
                row[i] = Rational::one();
                row
            })
            .collect();
        CoveringLp {
            m,
            xb: b,
            cols: Vec::new(),
            costs: Vec::new(),
            basis: (m..2 * m).collect(),
            binv,
            phase: Phase::Fresh,
        }
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn columns(&self) -> usize {
        self.cols.len()
    }

    /// Appends a column given by its non-zero `(row, coefficient)` entries.
    pub fn add_column(&mut self, entries: Vec<(usize, Rational)>, cost: Rational) -> usize {
        assert!(entries.iter().all(|&(r, _)| r < self.m), "row out of range");
        self.cols
            .push(entries.into_iter().filter(|(_, a)| !a.is_zero()).collect());
        self.costs.push(cost);
        self.cols.len() - 1
    }

    fn width(&self) -> usize {
        2 * self.m + self.cols.len()
    }

    fn is_artificial(&self, var: usize) -> bool {
        (self.m..2 * self.m).contains(&var)
    }

    fn cost(&self, var: usize, phase1: bool) -> Rational {
        if phase1 {
            if self.is_artificial(var) {
                Rational::one()
            } else {
                Rational::zero()
            }
        } else if var >= 2 * self.m {
            self.costs[var - 2 * self.m].clone()
        } else {
            Rational::zero()
        }
    }

    /// `B⁻¹ a_var`.
    fn ftran(&self, var: usize) -> Vec<Rational> {
        let m = self.m;
        let mut u = vec![Rational::zero(); m];
        let mut add = |row: usize, coef: &Rational| {
            for (i, ui) in u.iter_mut().enumerate() {
                let e = &self.binv[i][row];
                if !e.is_zero() {
                    *ui += e * coef;
                }
            }
        };
        if var < m {
            add(var, &-Rational::one());
        } else if var < 2 * m {
            add(var - m, &Rational::one());
        } else {
            for (row, coef) in &self.cols[var - 2 * m] {
                add(*row, coef);
            }
        }
        u
    }

    /// `c_Bᵀ B⁻¹`.
    fn duals(&self, phase1: bool) -> Vec<Rational> {
        let mut y = vec![Rational::zero(); self.m];
        for (i, &var) in self.basis.iter().enumerate() {
            let cb = self.cost(var, phase1);
            if cb.is_zero() {
                continue;
            }
            for (k, yk) in y.iter_mut().enumerate() {
                let e = &self.binv[i][k];
                if !e.is_zero() {
                    *yk += &cb * e;
                }
            }
        }
        y
    }

    fn reduced_cost(&self, var: usize, y: &[Rational], phase1: bool) -> Rational {
        let m = self.m;
        let c = self.cost(var, phase1);
        if var < m {
            c + &y[var]
        } else if var < 2 * m {
            c - &y[var - m]
        } else {
            self.cols[var - 2 * m]
                .iter()
                .fold(c, |acc, (row, coef)| acc - &y[*row] * coef)
        }
    }

    fn pivot(&mut self, r: usize, var: usize, u: &[Rational]) {
        let p = u[r].clone();
        for e in self.binv[r].iter_mut() {
            if !e.is_zero() {
                *e /= &p;
            }
        }
        self.xb[r] /= &p;
        let pivot_row = std::mem::take(&mut self.binv[r]);
        let nz: Vec<usize> = (0..self.m).filter(|&k| !pivot_row[k].is_zero()).collect();
        for (i, ui) in u.iter().enumerate() {
            if i == r || ui.is_zero() {
                continue;
            }
            for &k in &nz {
                let delta = ui * &pivot_row[k];
                self.binv[i][k] -= delta;
            }
            let delta = ui * &self.xb[r];
            self.xb[i] -= delta;
        }
        self.binv[r] = pivot_row;
        self.basis[r] = var;
    }

    /// Returns false when unbounded.
    fn optimize(&mut self, phase1: bool) -> bool {
        let mut degenerate_run = 0usize;
        let mut bland = false;
        loop {
            let y = self.duals(phase1);
            let mut entering: Option<(usize, Rational)> = None;
            for var in 0..self.width() {
                if !phase1 && self.is_artificial(var) {
                    continue;
                }
                let d = self.reduced_cost(var, &y, phase1);
                if !d.is_negative() {
                    continue;
                }
                if bland {
                    entering = Some((var, d));
                    break;
                }
                if entering.as_ref().is_none_or(|(_, best)| d < *best) {
                    entering = Some((var, d));
                }
            }
            let Some((var, _)) = entering else {
                return true;
            };
            let u = self.ftran(var);
            let mut leave: Option<(usize, Rational)> = None;
            for (i, ui) in u.iter().enumerate() {
                if !ui.is_positive() {
                    continue;
                }
                let ratio = &self.xb[i] / ui;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, ratio)) = leave else {
                return false;
            };
            if ratio.is_zero() {
                degenerate_run += 1;
                bland |= degenerate_run >= BLAND_AFTER;
            } else {
                degenerate_run = 0;
            }
            self.pivot(r, var, &u);
        }
    }

    fn phase_one(&mut self) {
        self.optimize(true);
        let infeasibility: Rational = self
            .basis
            .iter()
            .zip(&self.xb)
            .filter(|(&var, _)| self.is_artificial(var))
            .map(|(_, x)| x.clone())
            .sum();
        if !infeasibility.is_zero() {
            self.phase = Phase::Infeasible;
            return;
        }
        // drive zero-valued artificials out of the basis where possible
        for r in 0..self.m {
            if !self.is_artificial(self.basis[r]) {
                continue;
            }
            let replacement = (0..self.width())
                .filter(|&v| !self.is_artificial(v) && !self.basis.contains(&v))
                .map(|v| (v, self.ftran(v)))
                .find(|(_, u)| !u[r].is_zero());
            if let Some((v, u)) = replacement {
                self.pivot(r, v, &u);
            }
        }
        self.phase = Phase::Feasible;
    }

    /// Solves from the current basis.
    pub fn solve(&mut self) -> LpOutcome {
        if self.phase == Phase::Fresh {
            self.phase_one();
        }
        if self.phase == Phase::Infeasible {
            return LpOutcome::Infeasible;
        }
        if !self.optimize(false) {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![Rational::zero(); self.cols.len()];
        let mut value = Rational::zero();
        for (&var, xv) in self.basis.iter().zip(&self.xb) {
            if var >= 2 * self.m {
                x[var - 2 * self.m] = xv.clone();
                value += &self.costs[var - 2 * self.m] * xv;
            }
        }
        LpOutcome::Optimal(LpSolution {
            value,
            x,
            y: self.duals(false),
        })
    }
}

/// One-shot solve of a dense problem; `a` is row-major with `m` rows.
pub fn solve_covering_form(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> LpOutcome {
    let n = c.len();
    assert!(
        a.iter().all(|row| row.len() == n),
        "ragged constraint matrix"
    );
    assert_eq!(b.len(), a.len());
    let mut lp = CoveringLp::new(b.to_vec());
    for (j, cj) in c.iter().enumerate() {
        let entries = a
            .iter()
            .enumerate()
            .map(|(i, row)| (i, row[j].clone()))
            .collect();
        lp.add_column(entries, cj.clone());
    }
    lp.solve()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| r(x, 1)).collect()
    }

    #[test]
    fn simple_covering() {
        // min x1 + x2, x1 + 2x2 >= 2, 3x1 + x2 >= 3  -> x = (4/5, 3/5), value 7/5
        let a = vec![ints(&[1, 2]), ints(&[3, 1])];
        let LpOutcome::Optimal(s) = solve_covering_form(&a, &ints(&[2, 3]), &ints(&[1, 1])) else {
            panic!("expected optimum");
        };
        assert_eq!(s.value, r(7, 5));
        assert_eq!(s.x, vec![r(4, 5), r(3, 5)]);
        // strong duality: b·y equals the optimum
        let by: Rational = s.y.iter().zip(ints(&[2, 3])).map(|(y, b)| y * b).sum();
        assert_eq!(by, s.value);
    }

    #[test]
    fn infeasible_and_unbounded() {
        // 0·x >= 1 has no solution
        let a = vec![ints(&[0])];
        assert_eq!(
            solve_covering_form(&a, &ints(&[1]), &ints(&[1])),
            LpOutcome::Infeasible
        );
        // min -x, x >= 1 is unbounded
        let a = vec![ints(&[1])];
        assert_eq!(
            solve_covering_form(&a, &ints(&[1]), &ints(&[-1])),
            LpOutcome::Unbounded
        );
    }

    #[test]
    fn degenerate_redundant_rows() {
        let a = vec![ints(&[1, 1]), ints(&[1, 1]), ints(&[0, 0])];
        let LpOutcome::Optimal(s) = solve_covering_form(&a, &ints(&[1, 1, 0]), &ints(&[2, 3]))
        else {
            panic!("expected optimum");
        };
        assert_eq!(s.value, r(2, 1));
    }

    #[test]
    fn warm_start_after_new_column() {
        // rows: x0 covers row 0 at cost 1, x1 covers row 1 at cost 1
        let mut lp = CoveringLp::new(ints(&[1, 1]));
        lp.add_column(vec![(0, r(1, 1))], r(1, 1));
        lp.add_column(vec![(1, r(1, 1))], r(1, 1));
        let LpOutcome::Optimal(s) = lp.solve() else {
            panic!()
        };
        assert_eq!(s.value, r(2, 1));
        // a column covering both rows at cost 3/2 improves the optimum
        lp.add_column(vec![(0, r(1, 1)), (1, r(1, 1))], r(3, 2));
        let LpOutcome::Optimal(s) = lp.solve() else {
            panic!()
        };
        assert_eq!(s.value, r(3, 2));
        assert_eq!(s.x, vec![r(0, 1), r(0, 1), r(1, 1)]);
        assert_eq!(lp.columns(), 3);
    }
}
