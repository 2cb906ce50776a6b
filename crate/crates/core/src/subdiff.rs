//! Polyhedral functions, their subdifferentials, perturbed minimization and
//! the nondegeneracy certificate.
//!
//! A [`PolyhedralFunction`] is `f(x) = max_j ⟨cⱼ, x⟩ + dⱼ` on an H-polyhedral
//! domain and `+∞` outside it. At a point `x` of the domain
//!
//! ```text
//! ∂f(x) = conv{cⱼ : piece j active} + cone{aᵢ : constraint i active}
//! ```
//!
//! and `x` is a nondegenerate critical point of `f - ⟨v, ·⟩` exactly when
//! `v ∈ ri ∂f(x)`.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, RatVector, Rational};
use crate::geometry::{
    positive_representation, ri_membership, GeneratedSet, HPolyhedron, RiStatus, Witness,
};
use crate::lp::{feasible_point, solve_lp, Feasibility, LinearProgram, LpOutcome};

/// The affine map `x ↦ ⟨slope, x⟩ + offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffinePiece {
    pub slope: RatVector,
    pub offset: Rational,
}

impl AffinePiece {
    pub fn new(slope: RatVector, offset: Rational) -> Self {
        AffinePiece { slope, offset }
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.slope.dot(x) + &self.offset
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyhedralFunction {
    dim: usize,
    pieces: Vec<AffinePiece>,
    domain: HPolyhedron,
}

impl PolyhedralFunction {
    /// With no pieces the function is zero on its domain.
    pub fn new(dim: usize, pieces: Vec<AffinePiece>, domain: HPolyhedron) -> Result<Self> {
        if domain.dim() != dim {
            return Err(Error::dim("domain", dim, domain.dim()));
        }
        if let Some(p) = pieces.iter().find(|p| p.slope.dim() != dim) {
            return Err(Error::dim("piece slope", dim, p.slope.dim()));
        }
        Ok(PolyhedralFunction {
            dim,
            pieces,
            domain,
        })
    }

    pub fn indicator(domain: HPolyhedron) -> Self {
        PolyhedralFunction {
            dim: domain.dim(),
            pieces: Vec::new(),
            domain,
        }
    }

    /// `max` of the pieces on all of `ℝ^dim`.
    pub fn max_affine(dim: usize, pieces: Vec<AffinePiece>) -> Result<Self> {
        Self::new(dim, pieces, HPolyhedron::whole_space(dim))
    }

    /// `|x|` on the real line.
    pub fn abs() -> Self {
        Self::max_affine(
            1,
            vec![
                AffinePiece::new(RatVector::from_ints(&[1]), int(0)),
                AffinePiece::new(RatVector::from_ints(&[-1]), int(0)),
            ],
        )
        .expect("one-dimensional pieces")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pieces(&self) -> &[AffinePiece] {
        &self.pieces
    }

    pub fn domain(&self) -> &HPolyhedron {
        &self.domain
    }

    pub fn is_proper(&self) -> bool {
        matches!(feasible_point(&self.domain), Feasibility::Point(_))
    }

    /// `f - ⟨v, ·⟩` as a polyhedral function of the same shape.
    pub fn perturbed(&self, v: &RatVector) -> Result<PolyhedralFunction> {
        self.check_dim(v, "perturbation")?;
        let pieces = if self.pieces.is_empty() {
            vec![AffinePiece::new(v.neg(), int(0))]
        } else {
            self.pieces
                .iter()
                .map(|p| AffinePiece::new(p.slope.sub(v), p.offset.clone()))
                .collect()
        };
        Self::new(self.dim, pieces, self.domain.clone())
    }

    /// Value of the max-affine part, ignoring the domain.
    fn max_value(&self, x: &[Rational]) -> Rational {
        self.pieces
            .iter()
            .map(|p| p.eval(x))
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Pieces attaining the maximum at `x`.
    pub fn active_pieces(&self, x: &[Rational]) -> Vec<usize> {
        let top = self.max_value(x);
        (0..self.pieces.len())
            .filter(|&j| self.pieces[j].eval(x) == top)
            .collect()
    }

    pub(crate) fn check_dim(&self, x: &[Rational], context: &'static str) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::dim(context, self.dim, x.len()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtendedValue {
    Finite(Rational),
    PlusInfinity,
}

impl ExtendedValue {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtendedValue::Finite(v) => Some(v),
            ExtendedValue::PlusInfinity => None,
        }
    }
}

pub fn evaluate(f: &PolyhedralFunction, x: &[Rational]) -> Result<ExtendedValue> {
    f.check_dim(x, "evaluation point")?;
    if !f.domain.contains(x) {
        return Ok(ExtendedValue::PlusInfinity);
    }
    Ok(ExtendedValue::Finite(f.max_value(x)))
}

/// `∂f(x)` together with the pieces and constraints that generate it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdifferential {
    pub set: GeneratedSet,
    /// Piece index of each point generator; empty when `f` has no pieces
    /// (the set then has the single point generator `0`).
    pub pieces: Vec<usize>,
    /// Constraint index of each ray generator.
    pub constraints: Vec<usize>,
}

impl Subdifferential {
    /// Spreads witness coefficients onto all pieces and constraints of `f`;
    /// generators not in the witness get zero.
    pub fn multipliers(&self, witness: &Witness, f: &PolyhedralFunction) -> Multipliers {
        let mut pieces = vec![Rational::zero(); f.pieces.len()];
        let mut constraints = vec![Rational::zero(); f.domain.len()];
        if !self.pieces.is_empty() {
            for (j, c) in &witness.points {
                pieces[self.pieces[*j]] = c.clone();
            }
        }
        for (i, c) in &witness.rays {
            constraints[self.constraints[*i]] = c.clone();
        }
        Multipliers {
            pieces: pieces.into(),
            constraints: constraints.into(),
        }
    }
}

/// Subdifferential at a point of the domain. Outside the domain the
/// subdifferential is empty by convention; that case is an error here.
pub fn subdifferential(f: &PolyhedralFunction, x: &[Rational]) -> Result<Subdifferential> {
    f.check_dim(x, "subdifferential point")?;
    if let Some(i) = f.domain.first_violated(x) {
        return Err(Error::OutsideDomain { constraint: i });
    }
    let pieces = if f.pieces.is_empty() {
        Vec::new()
    } else {
        f.active_pieces(x)
    };
    let points = if pieces.is_empty() {
        vec![RatVector::zeros(f.dim)]
    } else {
        pieces.iter().map(|&j| f.pieces[j].slope.clone()).collect()
    };
    let constraints = f.domain.active_set(x);
    let rays = constraints
        .iter()
        .map(|&i| f.domain.a().row(i).clone())
        .collect();
    Ok(Subdifferential {
        set: GeneratedSet::new(points, rays, f.dim)?,
        pieces,
        constraints,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Perturbed {
    Minimizer { x: RatVector, value: Rational },
    Unbounded,
    Infeasible,
}

/// The epigraph program `maximize ⟨v, x⟩ - t` over `t ≥ ⟨cⱼ, x⟩ + dⱼ`,
/// `A x ≤ b`. Without pieces the `t` column is omitted.
pub(crate) fn epigraph_lp(f: &PolyhedralFunction, v: &RatVector) -> LinearProgram {
    if f.pieces.is_empty() {
        return LinearProgram {
            objective: v.clone(),
            constraints: f.domain.clone(),
        };
    }
    let mut rows = Vec::with_capacity(f.pieces.len() + f.domain.len());
    for p in &f.pieces {
        rows.push((p.slope.extended(int(-1)), -&p.offset));
    }
    for (a, b) in f.domain.a().rows().iter().zip(f.domain.b().iter()) {
        rows.push((a.extended(int(0)), b.clone()));
    }
    LinearProgram {
        objective: v.extended(int(-1)),
        constraints: HPolyhedron::from_rows(rows, f.dim + 1).expect("lifted rows"),
    }
}

/// Minimizes `f - ⟨v, ·⟩` exactly; returns the minimizer the deterministic
/// solver reaches.
pub fn minimize_perturbed(f: &PolyhedralFunction, v: &RatVector) -> Result<Perturbed> {
    f.check_dim(v, "perturbation")?;
    let lp = epigraph_lp(f, v);
    Ok(match solve_lp(&lp) {
        LpOutcome::Optimal { x, value, .. } => {
            let x: RatVector = x.iter().take(f.dim).cloned().collect();
            Perturbed::Minimizer { x, value: -value }
        }
        LpOutcome::Unbounded { .. } => Perturbed::Unbounded,
        LpOutcome::Infeasible { .. } => Perturbed::Infeasible,
    })
}

/// Full-length multiplier vectors, one entry per piece and per constraint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multipliers {
    pub pieces: RatVector,
    pub constraints: RatVector,
}

impl Multipliers {
    /// Piece weights followed by constraint multipliers.
    pub fn concatenated(&self) -> RatVector {
        self.pieces
            .iter()
            .chain(self.constraints.iter())
            .cloned()
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificationResult {
    NotCritical,
    DegenerateCritical,
    Nondegenerate {
        /// Strictly positive coefficients over the pruned generators of `∂f(x)`.
        witness: Witness,
        multipliers: Multipliers,
    },
}

impl CertificationResult {
    pub fn is_nondegenerate(&self) -> bool {
        matches!(self, CertificationResult::Nondegenerate { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            CertificationResult::NotCritical => "not_critical",
            CertificationResult::DegenerateCritical => "degenerate",
            CertificationResult::Nondegenerate { .. } => "nondegenerate",
        }
    }
}

pub(crate) fn classify(
    sub: &Subdifferential,
    f: &PolyhedralFunction,
    target: &[Rational],
) -> Result<CertificationResult> {
    Ok(match ri_membership(&sub.set, target)? {
        RiStatus::Interior { witness } => CertificationResult::Nondegenerate {
            multipliers: sub.multipliers(&witness, f),
            witness,
        },
        RiStatus::Boundary => CertificationResult::DegenerateCritical,
        RiStatus::Outside => CertificationResult::NotCritical,
    })
}

/// Classifies `x` for `f - ⟨v, ·⟩`: not critical (`v ∉ ∂f(x)`), degenerate
/// (`v ∈ rb ∂f(x)`) or nondegenerate (`v ∈ ri ∂f(x)`).
pub fn certify(f: &PolyhedralFunction, v: &RatVector, x: &[Rational]) -> Result<CertificationResult> {
    f.check_dim(v, "perturbation")?;
    let sub = subdifferential(f, x)?;
    classify(&sub, f, v)
}

/// A dual solution of `lp` that is strictly positive on every constraint
/// active at `x` and zero elsewhere, if one exists.
pub fn strict_complementarity(lp: &LinearProgram, x: &RatVector) -> Result<Option<RatVector>> {
    let p = &lp.constraints;
    p.check_dim(x, "candidate point")?;
    if let Some(i) = p.first_violated(x) {
        return Err(Error::OutsideDomain { constraint: i });
    }
    let optimum = match solve_lp(lp) {
        LpOutcome::Optimal { value, .. } => value,
        LpOutcome::Unbounded { .. } => return Err(Error::NoOptimum("unbounded")),
        LpOutcome::Infeasible { .. } => return Err(Error::NoOptimum("infeasible")),
    };
    let gap = &optimum - lp.objective.dot(x);
    if !gap.is_zero() {
        return Err(Error::NotOptimal { gap });
    }
    let active = p.active_set(x);
    let rays = active.iter().map(|&i| p.a().row(i).clone()).collect();
    let cone = GeneratedSet::cone(rays, p.dim())?;
    // No pruning: the multiplier must be positive on every active constraint.
    Ok(match positive_representation(&cone, &lp.objective)? {
        RiStatus::Interior { witness } => {
            let mut lambda = vec![Rational::zero(); p.len()];
            for (i, c) in witness.rays {
                lambda[active[i]] = c;
            }
            debug_assert!(lambda.iter().all(|l| !l.is_negative()));
            Some(lambda.into())
        }
        _ => None,
    })
}
