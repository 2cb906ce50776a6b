//! Exact linear programming in inequality form.
//!
//! `maximize ⟨objective, x⟩ subject to A x ≤ b` with `x` free. Outcomes carry
//! exact certificates: optimal duals with zero gap, an improving ray, or a
//! Farkas vector.

pub(crate) mod simplex;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{solve_linear, RatMatrix, RatVector, Rational, SolveOutcome};
use crate::geometry::HPolyhedron;

use simplex::{solve_standard, StandardLp, StandardOutcome};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    pub objective: RatVector,
    pub constraints: HPolyhedron,
}

impl LinearProgram {
    pub fn new(objective: RatVector, constraints: HPolyhedron) -> Result<Self> {
        if objective.dim() != constraints.dim() {
            return Err(Error::dim("objective", constraints.dim(), objective.dim()));
        }
        Ok(LinearProgram {
            objective,
            constraints,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        x: RatVector,
        value: Rational,
        /// One nonnegative multiplier per constraint, in input order.
        duals: RatVector,
        /// Indices `i` with `aᵢᵀx = bᵢ`, ascending.
        active_set: Vec<usize>,
    },
    /// `point` is feasible; `A ray ≤ 0` and `⟨objective, ray⟩ > 0`.
    Unbounded { point: RatVector, ray: RatVector },
    /// `farkas ≥ 0`, `farkasᵀA = 0`, `farkasᵀb < 0`.
    Infeasible { farkas: RatVector },
}

impl LpOutcome {
    pub fn is_optimal(&self) -> bool {
        matches!(self, LpOutcome::Optimal { .. })
    }
}

/// Solves the program with Bland's rule. The same input always yields the
/// same outcome, down to the choice among multiple optimal bases.
pub fn solve_lp(lp: &LinearProgram) -> LpOutcome {
    let p = &lp.constraints;
    let n = p.dim();
    let m = p.len();

    // x = x⁺ - x⁻, one slack per row.
    let mut a = Vec::with_capacity(m);
    for (i, row) in p.a().rows().iter().enumerate() {
        let mut r = Vec::with_capacity(2 * n + m);
        r.extend(row.iter().cloned());
        r.extend(row.iter().map(|x| -x));
        r.extend((0..m).map(|k| {
            if k == i {
                Rational::from_integer(1.into())
            } else {
                Rational::zero()
            }
        }));
        a.push(r);
    }
    let mut c: Vec<Rational> = lp.objective.iter().map(|x| -x).collect();
    c.extend(lp.objective.iter().cloned());
    c.resize(2 * n + m, Rational::zero());

    let std = StandardLp {
        a,
        b: p.b().to_vec(),
        c,
    };
    let split = |z: &[Rational]| -> RatVector { (0..n).map(|k| &z[k] - &z[n + k]).collect() };

    match solve_standard(&std) {
        StandardOutcome::Optimal { z, duals, .. } => {
            let x = to_vertex(p, split(&z));
            let value = lp.objective.dot(&x);
            let duals: RatVector = duals.iter().map(|y| -y).collect();
            let active_set = p.active_set(&x);
            debug_assert_eq!(duals.dot(p.b()), value);
            LpOutcome::Optimal {
                x,
                value,
                duals,
                active_set,
            }
        }
        StandardOutcome::Unbounded { z, ray } => LpOutcome::Unbounded {
            point: split(&z),
            ray: split(&ray),
        },
        StandardOutcome::Infeasible { farkas } => LpOutcome::Infeasible {
            farkas: farkas.iter().map(|y| -y).collect(),
        },
    }
}

/// Moves an optimal point to a vertex of the optimal face when `p` has one.
///
/// The split `x = x⁺ - x⁻` can leave the simplex at a non-vertex. While the
/// active rows have a kernel, step along its first basis vector (or its
/// negative) until another row becomes tight. The objective is constant along
/// such a step, otherwise `x` would not be optimal, so the duals stay valid.
/// Stops early if the kernel direction is a line of `p`.
fn to_vertex(p: &HPolyhedron, mut x: RatVector) -> RatVector {
    let n = p.dim();
    loop {
        let active = p.active_set(&x);
        let rows: Vec<RatVector> = active.iter().map(|&i| p.a().row(i).clone()).collect();
        let a = RatMatrix::new(rows, n).expect("rows of p");
        let d = match solve_linear(&a, &vec![Rational::zero(); active.len()]).expect("consistent sizes") {
            SolveOutcome::Underdetermined { mut kernel, .. } => kernel.swap_remove(0),
            _ => return x,
        };
        let step = |d: &RatVector| -> Option<Rational> {
            (0..p.len())
                .filter_map(|i| {
                    let ad = p.a().row(i).dot(d);
                    ad.is_positive().then(|| p.slack(i, &x) / ad)
                })
                .min()
        };
        let (d, t) = match step(&d) {
            Some(t) => (d, t),
            None => {
                let d = d.neg();
                match step(&d) {
                    Some(t) => (d, t),
                    None => return x,
                }
            }
        };
        x = x.add(&d.scale(&t));
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Point(RatVector),
    Infeasible(RatVector),
}

/// Phase-I: a point of `p` or a Farkas certificate of emptiness.
pub fn feasible_point(p: &HPolyhedron) -> Feasibility {
    let lp = LinearProgram {
        objective: RatVector::zeros(p.dim()),
        constraints: p.clone(),
    };
    match solve_lp(&lp) {
        LpOutcome::Optimal { x, .. } => Feasibility::Point(x),
        LpOutcome::Infeasible { farkas } => Feasibility::Infeasible(farkas),
        LpOutcome::Unbounded { .. } => unreachable!("zero objective cannot be unbounded"),
    }
}

/// Checks every certificate condition of an outcome exactly. Used by tests
/// and by callers that want to re-validate a stored outcome.
pub fn verify_outcome(lp: &LinearProgram, outcome: &LpOutcome) -> std::result::Result<(), String> {
    let p = &lp.constraints;
    match outcome {
        LpOutcome::Optimal {
            x,
            value,
            duals,
            active_set,
        } => {
            if !p.contains(x) {
                return Err("optimal point infeasible".into());
            }
            if &lp.objective.dot(x) != value {
                return Err("value mismatch".into());
            }
            if duals.iter().any(Signed::is_negative) {
                return Err("negative dual".into());
            }
            if p.a().transpose().mul_vec(duals) != lp.objective {
                return Err("duals do not reproduce the objective".into());
            }
            if &duals.dot(p.b()) != value {
                return Err("nonzero duality gap".into());
            }
            if active_set != &p.active_set(x) {
                return Err("active set mismatch".into());
            }
            for (i, y) in duals.iter().enumerate() {
                if !y.is_zero() && !active_set.contains(&i) {
                    return Err(format!("positive dual on inactive constraint {i}"));
                }
            }
            Ok(())
        }
        LpOutcome::Unbounded { point, ray } => {
            if !p.contains(point) {
                return Err("unbounded base point infeasible".into());
            }
            if p.a().mul_vec(ray).iter().any(Signed::is_positive) {
                return Err("ray leaves the polyhedron".into());
            }
            if !lp.objective.dot(ray).is_positive() {
                return Err("ray does not improve".into());
            }
            Ok(())
        }
        LpOutcome::Infeasible { farkas } => {
            if farkas.iter().any(Signed::is_negative) {
                return Err("negative Farkas entry".into());
            }
            if !p.a().transpose().mul_vec(farkas).is_zero() {
                return Err("farkasᵀA ≠ 0".into());
            }
            if !farkas.dot(p.b()).is_negative() {
                return Err("farkasᵀb ≥ 0".into());
            }
            Ok(())
        }
    }
}
