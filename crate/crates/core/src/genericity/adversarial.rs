//! Explicit points of the degenerate set `⋃ₓ rb ∂f(x)`.

use crate::error::Result;
use crate::exact::{int, solve_linear, RatMatrix, RatVector, SolveOutcome};
use crate::geometry::{positive_span_is_subspace, prune, ri_membership, GeneratedSet, RiStatus};
use crate::prox::DEFAULT_ENUM_BOUND;
use crate::subdiff::{subdifferential, PolyhedralFunction};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegeneratePair {
    pub v: RatVector,
    pub x: RatVector,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum AdversarialStatus {
    Found,
    /// Every examined subdifferential is an affine subspace, so its relative
    /// boundary is empty.
    NoRelativeBoundary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdversarialReport {
    pub pairs: Vec<DegeneratePair>,
    pub candidates_examined: usize,
    pub status: AdversarialStatus,
}

pub fn construct_degenerate(f: &PolyhedralFunction) -> Result<AdversarialReport> {
    construct_degenerate_bounded(f, DEFAULT_ENUM_BOUND)
}

/// Candidate points: solutions of every system obtained by making up to
/// `dim + 1` epigraph constraints (pieces and domain rows) tight, kept when
/// they lie in the domain. This reaches the domain vertices and the tie
/// points of the pieces.
fn candidate_points(f: &PolyhedralFunction, bound: usize) -> Result<Vec<RatVector>> {
    let n = f.dim();
    let lifted = !f.pieces().is_empty();
    let width = if lifted { n + 1 } else { n };
    let mut rows: Vec<(RatVector, crate::exact::Rational)> = Vec::new();
    for p in f.pieces() {
        rows.push((p.slope.extended(int(-1)), -&p.offset));
    }
    for (a, b) in f.domain().a().rows().iter().zip(f.domain().b().iter()) {
        let a = if lifted { a.extended(int(0)) } else { a.clone() };
        rows.push((a, b.clone()));
    }
    if rows.len() > bound {
        return Err(crate::error::Error::EnumerationBound {
            generators: rows.len(),
            bound,
        });
    }

    let mut out: Vec<RatVector> = Vec::new();
    let total = rows.len();
    for size in 0..=width.min(total) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let a = RatMatrix::new(idx.iter().map(|&i| rows[i].0.clone()).collect(), width)?;
            let b: Vec<_> = idx.iter().map(|&i| rows[i].1.clone()).collect();
            let sol = match solve_linear(&a, &b)? {
                SolveOutcome::Unique(x) => Some(x),
                SolveOutcome::Underdetermined { particular, .. } => Some(particular),
                SolveOutcome::Inconsistent => None,
            };
            if let Some(z) = sol {
                let x: RatVector = z.iter().take(n).cloned().collect();
                if f.domain().contains(&x) && !out.contains(&x) {
                    out.push(x);
                }
            }
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
    Ok(out)
}

/// For each candidate `x̄` whose subdifferential is not an affine subspace,
/// emits one `v ∈ rb ∂f(x̄)`: the point generator shifted by a pruned ray,
/// or a pruned point generator. Every emitted pair is re-verified.
pub fn construct_degenerate_bounded(f: &PolyhedralFunction, bound: usize) -> Result<AdversarialReport> {
    let candidates = candidate_points(f, bound)?;
    let mut pairs = Vec::new();
    for x in &candidates {
        let s = subdifferential(f, x)?.set;
        let kept = prune(&s)?;
        if kept.points.len() == 1 {
            let rays: Vec<RatVector> = kept.rays.iter().map(|&i| s.rays()[i].clone()).collect();
            if positive_span_is_subspace(&GeneratedSet::cone(rays, f.dim())?)? {
                // singleton or a translated subspace: empty relative boundary
                continue;
            }
        }
        let anchor = &s.points()[kept.points[0]];
        let tries = kept
            .rays
            .iter()
            .map(|&i| anchor.add(&s.rays()[i]))
            .chain(kept.points.iter().map(|&j| s.points()[j].clone()));
        for v in tries {
            if ri_membership(&s, &v)? == RiStatus::Boundary {
                pairs.push(DegeneratePair { v, x: x.clone() });
                break;
            }
        }
    }
    let status = if pairs.is_empty() {
        AdversarialStatus::NoRelativeBoundary
    } else {
        AdversarialStatus::Found
    };
    Ok(AdversarialReport {
        pairs,
        candidates_examined: candidates.len(),
        status,
    })
}
