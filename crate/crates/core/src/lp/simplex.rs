//! Dense two-phase tableau simplex over the rationals for problems in
//! standard form: minimize `c·z` subject to `A z = b`, `z ≥ 0`.
//!
//! Pivoting follows Bland's rule (lowest-index entering column, ratio ties
//! broken by lowest basic-variable index), so the method terminates without
//! perturbation and is fully deterministic.

use num_traits::{Signed, Zero};

use crate::exact::{dot, Rational};

#[derive(Clone, Debug)]
pub(crate) struct StandardLp {
    pub a: Vec<Vec<Rational>>,
    pub b: Vec<Rational>,
    pub c: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum StandardOutcome {
    /// `duals` is a row vector `y` with `c - Aᵀy ≥ 0` and `yᵀb = c·z`.
    Optimal {
        z: Vec<Rational>,
        value: Rational,
        duals: Vec<Rational>,
    },
    /// `z` is feasible, `A ray = 0`, `ray ≥ 0` and `c·ray < 0`.
    Unbounded { z: Vec<Rational>, ray: Vec<Rational> },
    /// `yᵀA ≤ 0` and `yᵀb > 0`.
    Infeasible { farkas: Vec<Rational> },
}

struct Tableau {
    /// Structural columns followed by artificial columns.
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    /// Column that formed the identity for each row at the start.
    initial: Vec<usize>,
    /// `+1`/`-1` factor applied to each row so that `rhs ≥ 0` initially.
    flipped: Vec<bool>,
    structural: usize,
}

impl Tableau {
    fn ncols(&self) -> usize {
        self.rows.first().map_or(self.structural, Vec::len)
    }

    fn is_artificial(&self, j: usize) -> bool {
        j >= self.structural
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        let support: Vec<usize> = (0..self.ncols())
            .filter(|&k| !self.rows[r][k].is_zero())
            .collect();
        for &k in &support {
            self.rows[r][k] *= &inv;
        }
        self.rhs[r] *= &inv;
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let factor = self.rows[i][c].clone();
            for &k in &support {
                let delta = &factor * &pivot_row[k];
                self.rows[i][k] -= delta;
            }
            if !pivot_rhs.is_zero() {
                self.rhs[i] -= &factor * &pivot_rhs;
            }
        }
        self.rows[r] = pivot_row;
        self.basis[r] = c;
    }

    /// Reduced costs `c_j - c_Bᵀ B⁻¹ A_j` for every column.
    fn reduced_costs(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut rc = cost.to_vec();
        for (i, row) in self.rows.iter().enumerate() {
            let cb = &cost[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    rc[j] -= cb * x;
                }
            }
        }
        rc
    }

    /// Runs Bland pivots for `cost`. Returns the unbounded entering column
    /// if the objective is unbounded below.
    fn optimize(&mut self, cost: &[Rational], allow_artificial: bool) -> Option<usize> {
        let mut rc = self.reduced_costs(cost);
        loop {
            let entering = (0..self.ncols())
                .filter(|&j| allow_artificial || !self.is_artificial(j))
                .find(|&j| rc[j].is_negative());
            let c = entering?;
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((best, best_ratio)) => {
                        ratio < *best_ratio
                            || (ratio == *best_ratio && self.basis[i] < self.basis[*best])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return Some(c);
            };
            self.pivot(r, c);
            // Update the reduced-cost row with the same elimination step.
            let factor = rc[c].clone();
            for (j, x) in self.rows[r].iter().enumerate() {
                if !x.is_zero() {
                    rc[j] -= &factor * x;
                }
            }
        }
    }

    fn primal(&self) -> Vec<Rational> {
        let mut z = vec![Rational::zero(); self.structural];
        for (i, &j) in self.basis.iter().enumerate() {
            if j < self.structural {
                z[j] = self.rhs[i].clone();
            }
        }
        z
    }

    /// Simplex multipliers in the caller's row orientation.
    fn duals(&self, cost: &[Rational]) -> Vec<Rational> {
        let rc = self.reduced_costs(cost);
        self.initial
            .iter()
            .zip(&self.flipped)
            .map(|(&j, &flip)| {
                let y = &cost[j] - &rc[j];
                if flip {
                    -y
                } else {
                    y
                }
            })
            .collect()
    }
}

pub(crate) fn solve_standard(lp: &StandardLp) -> StandardOutcome {
    let m = lp.b.len();
    let n = lp.c.len();
    debug_assert!(lp.a.iter().all(|r| r.len() == n));

    let mut rows = lp.a.clone();
    let mut rhs = lp.b.clone();
    let mut flipped = vec![false; m];
    for i in 0..m {
        if rhs[i].is_negative() {
            flipped[i] = true;
            rhs[i] = -&rhs[i];
            for x in rows[i].iter_mut() {
                *x = -&*x;
            }
        }
    }

    // Crash basis: reuse existing unit columns, add artificials elsewhere.
    let mut initial = vec![usize::MAX; m];
    for j in 0..n {
        let mut unit_row = None;
        let mut is_unit = true;
        for (i, row) in rows.iter().enumerate() {
            let x = &row[j];
            if x.is_zero() {
                continue;
            }
            if unit_row.is_none() && x == &Rational::from_integer(1.into()) {
                unit_row = Some(i);
            } else {
                is_unit = false;
                break;
            }
        }
        if let (true, Some(i)) = (is_unit, unit_row) {
            if initial[i] == usize::MAX {
                initial[i] = j;
            }
        }
    }
    let mut next_art = n;
    let mut phase_one_cost = vec![Rational::zero(); n];
    for slot in initial.iter_mut() {
        if *slot == usize::MAX {
            *slot = next_art;
            next_art += 1;
            phase_one_cost.push(Rational::from_integer(1.into()));
        }
    }
    let total = next_art;
    for (i, row) in rows.iter_mut().enumerate() {
        row.resize(total, Rational::zero());
        if initial[i] >= n {
            row[initial[i]] = Rational::from_integer(1.into());
        }
    }

    let mut tab = Tableau {
        rows,
        rhs,
        basis: initial.clone(),
        initial,
        flipped,
        structural: n,
    };

    if total > n {
        tab.optimize(&phase_one_cost, true);
        let infeasibility: Rational = tab
            .basis
            .iter()
            .zip(&tab.rhs)
            .filter(|(&j, _)| j >= n)
            .map(|(_, x)| x.clone())
            .sum();
        if infeasibility.is_positive() {
            return StandardOutcome::Infeasible {
                farkas: tab.duals(&phase_one_cost),
            };
        }
        // Drive zero-level artificials out of the basis where possible.
        for r in 0..m {
            if tab.basis[r] < n {
                continue;
            }
            if let Some(c) = (0..n).find(|&j| !tab.rows[r][j].is_zero()) {
                tab.pivot(r, c);
            }
        }
    }

    let mut cost = lp.c.clone();
    cost.resize(total, Rational::zero());
    if let Some(c) = tab.optimize(&cost, false) {
        let mut ray = vec![Rational::zero(); n];
        ray[c] = Rational::from_integer(1.into());
        for (i, &j) in tab.basis.iter().enumerate() {
            if j < n {
                ray[j] = -&tab.rows[i][c];
            }
        }
        return StandardOutcome::Unbounded {
            z: tab.primal(),
            ray,
        };
    }
    let z = tab.primal();
    let value = dot(&lp.c, &z);
    let duals = tab.duals(&cost);
    debug_assert_eq!(dot(&duals, &lp.b), value, "duality gap");
    StandardOutcome::Optimal { z, value, duals }
}
