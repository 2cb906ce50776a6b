//! Exact proximal maps (resolvents `(I + ∂g)⁻¹`) of polyhedral functions,
//! the transport map `c ↦ c - (ρ+1)(I + ∂g)⁻¹(c)`, and critical points of
//! `g - (ρ/2)|·|²`.
//!
//! All three rest on the same active-set enumeration. For a set `P` of
//! pieces and `C` of constraints the unknowns `(x, μ, λ, s)` satisfy
//!
//! ```text
//! α x + Σ_{j∈P} μⱼ cⱼ + Σ_{i∈C} λᵢ aᵢ = r,   Σ μⱼ = 1,
//! ⟨cⱼ, x⟩ + dⱼ = s  (j ∈ P),                 ⟨aᵢ, x⟩ = bᵢ  (i ∈ C),
//! ```
//!
//! with `α = 1, r = c` for the prox and `α = -ρ, r = v` for critical points.
//! By Carathéodory every solution of the inclusion is reached by a subset of
//! at most `n + 1` generators with independent lifts, and for such subsets
//! the system has a unique solution.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, solve_linear, RatMatrix, RatVector, Rational, SolveOutcome};
use crate::geometry::{member, ri_membership, RiStatus};
use crate::subdiff::{classify, subdifferential, AffinePiece, CertificationResult, PolyhedralFunction};

/// Default cap on pieces plus domain constraints for active-set enumeration.
pub const DEFAULT_ENUM_BOUND: usize = 20;

/// `f = g - (ρ/2)|·|²` with `g` polyhedral and proper.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerC2Instance {
    g: PolyhedralFunction,
    rho: Rational,
}

impl LowerC2Instance {
    pub fn new(g: PolyhedralFunction, rho: Rational) -> Result<Self> {
        if !rho.is_positive() {
            return Err(Error::Config(format!("rho must be positive, got {rho}")));
        }
        if !g.is_proper() {
            return Err(Error::InfeasibleDomain);
        }
        Ok(LowerC2Instance { g, rho })
    }

    pub fn g(&self) -> &PolyhedralFunction {
        &self.g
    }

    pub fn rho(&self) -> &Rational {
        &self.rho
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Candidate {
    x: RatVector,
}

fn generator_count(g: &PolyhedralFunction) -> usize {
    g.pieces().len() + g.domain().len()
}

fn check_bound(g: &PolyhedralFunction, bound: usize) -> Result<()> {
    let generators = generator_count(g);
    if generators > bound {
        return Err(Error::EnumerationBound { generators, bound });
    }
    Ok(())
}

/// Calls `visit` with every pair (pieces, constraints) with at least one
/// piece and at most `limit` generators, smallest subsets first.
fn for_each_active_set(npieces: usize, nconstraints: usize, limit: usize, mut visit: impl FnMut(&[usize], &[usize])) {
    let total = npieces + nconstraints;
    for size in 1..=limit.min(total) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let split = idx.partition_point(|&k| k < npieces);
            if split > 0 {
                let pieces = &idx[..split];
                let constraints: Vec<usize> = idx[split..].iter().map(|k| k - npieces).collect();
                visit(pieces, &constraints);
            }
            // next combination in lexicographic order
            let mut i = size;
            while i > 0 && idx[i - 1] == total - size + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for k in i..size {
                idx[k] = idx[k - 1] + 1;
            }
        }
    }
}

/// Solves the active-set systems and returns every `x` whose multipliers
/// are nonnegative, which lies in the domain, and at which the chosen pieces
/// attain the maximum. Duplicates removed, order of discovery kept.
fn enumerate_kkt(g: &PolyhedralFunction, alpha: &Rational, rhs: &RatVector) -> Vec<Candidate> {
    let n = g.dim();
    let zero_piece = [AffinePiece::new(RatVector::zeros(n), int(0))];
    let pieces: &[AffinePiece] = if g.pieces().is_empty() {
        &zero_piece
    } else {
        g.pieces()
    };
    let domain = g.domain();
    let mut found: Vec<Candidate> = Vec::new();

    for_each_active_set(pieces.len(), domain.len(), n + 1, |ps, cs| {
        let (np, nc) = (ps.len(), cs.len());
        // Unknown layout: x (n), μ (np), λ (nc), s.
        let width = n + np + nc + 1;
        let mut rows = Vec::with_capacity(n + 1 + np + nc);
        let mut b = Vec::with_capacity(n + 1 + np + nc);
        for d in 0..n {
            let mut row = vec![Rational::zero(); width];
            row[d] = alpha.clone();
            for (k, &j) in ps.iter().enumerate() {
                row[n + k] = pieces[j].slope[d].clone();
            }
            for (k, &i) in cs.iter().enumerate() {
                row[n + np + k] = domain.a().row(i)[d].clone();
            }
            rows.push(RatVector::new(row));
            b.push(rhs[d].clone());
        }
        let mut sum = vec![Rational::zero(); width];
        for k in 0..np {
            sum[n + k] = int(1);
        }
        rows.push(RatVector::new(sum));
        b.push(int(1));
        for &j in ps {
            let mut row = vec![Rational::zero(); width];
            row[..n].clone_from_slice(&pieces[j].slope);
            row[width - 1] = int(-1);
            rows.push(RatVector::new(row));
            b.push(-&pieces[j].offset);
        }
        for &i in cs {
            let mut row = vec![Rational::zero(); width];
            row[..n].clone_from_slice(domain.a().row(i));
            rows.push(RatVector::new(row));
            b.push(domain.b()[i].clone());
        }
        let m = RatMatrix::new(rows, width).expect("uniform width");
        let Ok(SolveOutcome::Unique(sol)) = solve_linear(&m, &b) else {
            return;
        };
        if sol[n..n + np + nc].iter().any(Signed::is_negative) {
            return;
        }
        let x: RatVector = sol[..n].iter().cloned().collect();
        if !domain.contains(&x) {
            return;
        }
        let s = &sol[width - 1];
        if pieces.iter().any(|p| &p.eval(&x) > s) {
            return;
        }
        if !found.iter().any(|c| c.x == x) {
            found.push(Candidate { x });
        }
    });
    found
}

pub fn prox(f: &PolyhedralFunction, c: &RatVector) -> Result<RatVector> {
    prox_bounded(f, c, DEFAULT_ENUM_BOUND)
}

/// `argmin_x f(x) + ½|x - c|²`, exactly.
pub fn prox_bounded(f: &PolyhedralFunction, c: &RatVector, bound: usize) -> Result<RatVector> {
    if c.dim() != f.dim() {
        return Err(Error::dim("prox center", f.dim(), c.dim()));
    }
    check_bound(f, bound)?;
    if !f.is_proper() {
        return Err(Error::InfeasibleDomain);
    }
    let mut found = enumerate_kkt(f, &int(1), c);
    // The prox objective is strictly convex, so every KKT point is the same.
    if found.len() > 1 {
        return Err(Error::Internal(format!(
            "{} distinct KKT points for a strictly convex problem",
            found.len()
        )));
    }
    let x = found
        .pop()
        .ok_or_else(|| Error::Internal("no KKT point found for a proper function".into()))?
        .x;
    let sub = subdifferential(f, &x)?;
    if !member(&sub.set, &c.sub(&x))? {
        return Err(Error::Internal("c - prox(c) is not a subgradient".into()));
    }
    Ok(x)
}

/// Output of the transport map: `x = (I + ∂g)⁻¹(c)` and `h = c - (1+ρ)x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transport {
    pub x: RatVector,
    pub h: RatVector,
}

pub fn minty_transport(inst: &LowerC2Instance, c: &RatVector) -> Result<Transport> {
    minty_transport_bounded(inst, c, DEFAULT_ENUM_BOUND)
}

pub fn minty_transport_bounded(inst: &LowerC2Instance, c: &RatVector, bound: usize) -> Result<Transport> {
    let x = prox_bounded(&inst.g, c, bound)?;
    let h = c.sub(&x.scale(&(int(1) + &inst.rho)));
    Ok(Transport { x, h })
}

/// Relative-interior status of `c` in `∂g(x) + x` and of `h` in
/// `∂f(x) = ∂g(x) - ρx`. The transport map carries one to the other, so the
/// two statuses agree.
pub fn transport_statuses(inst: &LowerC2Instance, c: &RatVector, t: &Transport) -> Result<(RiStatus, RiStatus)> {
    let sub = subdifferential(&inst.g, &t.x)?;
    let source = ri_membership(&sub.set.translate(&t.x), c)?;
    let shift = t.x.scale(&-&inst.rho);
    let target = ri_membership(&sub.set.translate(&shift), &t.h)?;
    Ok((source, target))
}

/// `h ∈ ∂f(x)` for the transported pair.
pub fn transport_in_subdifferential(inst: &LowerC2Instance, t: &Transport) -> Result<bool> {
    let sub = subdifferential(&inst.g, &t.x)?;
    member(&sub.set.translate(&t.x.scale(&-&inst.rho)), &t.h)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPoint {
    pub x: RatVector,
    pub certification: CertificationResult,
}

pub fn find_critical_points(inst: &LowerC2Instance, v: &RatVector) -> Result<Vec<CriticalPoint>> {
    find_critical_points_bounded(inst, v, DEFAULT_ENUM_BOUND)
}

/// Every `x` with `0 ∈ ∂f(x) - v`, i.e. `v + ρx ∈ ∂g(x)`, sorted by
/// coordinates, each classified by the relative-interior test.
pub fn find_critical_points_bounded(inst: &LowerC2Instance, v: &RatVector, bound: usize) -> Result<Vec<CriticalPoint>> {
    let g = &inst.g;
    if v.dim() != g.dim() {
        return Err(Error::dim("perturbation", g.dim(), v.dim()));
    }
    check_bound(g, bound)?;
    let mut points = Vec::new();
    for cand in enumerate_kkt(g, &-&inst.rho, v) {
        let sub = subdifferential(g, &cand.x)?;
        let target = v.add(&cand.x.scale(&inst.rho));
        if !member(&sub.set, &target)? {
            continue;
        }
        let certification = classify(&sub, g, &target)?;
        points.push(CriticalPoint {
            x: cand.x,
            certification,
        });
    }
    points.sort_by(|a, b| a.x.cmp(&b.x));
    Ok(points)
}
