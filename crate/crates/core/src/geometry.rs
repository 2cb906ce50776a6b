//! Polyhedra, finitely generated convex sets, normal cones and exposed faces.
//!
//! A [`GeneratedSet`] is `conv(points) + cone(rays)`. Every subdifferential
//! and normal cone handled by this crate has that form, and relative-interior
//! membership is decided on it exactly: `y ∈ ri S` iff `y` is a combination of
//! the generators with every coefficient strictly positive.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, rank_of, solve_linear, RatMatrix, RatVector, Rational, SolveOutcome};
use crate::lp::simplex::{solve_standard, StandardLp, StandardOutcome};

/// `{x : A x ≤ b}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolyhedron {
    a: RatMatrix,
    b: RatVector,
}

impl HPolyhedron {
    pub fn new(a: RatMatrix, b: RatVector) -> Result<Self> {
        if a.nrows() != b.dim() {
            return Err(Error::dim("constraint right-hand side", a.nrows(), b.dim()));
        }
        Ok(HPolyhedron { a, b })
    }

    /// No constraints at all.
    pub fn whole_space(dim: usize) -> Self {
        HPolyhedron {
            a: RatMatrix::empty(dim),
            b: RatVector::zeros(0),
        }
    }

    /// `[-radius, radius]^dim`, listed as `x_k ≤ r` for every k, then `-x_k ≤ r`.
    pub fn hypercube(dim: usize, radius: &Rational) -> Self {
        let mut rows = Vec::with_capacity(2 * dim);
        for k in 0..dim {
            rows.push(RatVector::unit(dim, k));
        }
        for k in 0..dim {
            rows.push(RatVector::unit(dim, k).neg());
        }
        let b = vec![radius.clone(); 2 * dim].into();
        HPolyhedron {
            a: RatMatrix::new(rows, dim).expect("unit rows"),
            b,
        }
    }

    pub fn from_rows(rows: Vec<(RatVector, Rational)>, dim: usize) -> Result<Self> {
        let (a, b): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
        Self::new(RatMatrix::new(a, dim)?, b.into())
    }

    pub fn dim(&self) -> usize {
        self.a.ncols()
    }

    /// Number of inequalities.
    pub fn len(&self) -> usize {
        self.b.dim()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn a(&self) -> &RatMatrix {
        &self.a
    }

    pub fn b(&self) -> &RatVector {
        &self.b
    }

    /// `bᵢ - aᵢᵀx`.
    pub fn slack(&self, i: usize, x: &[Rational]) -> Rational {
        &self.b[i] - self.a.row(i).dot(x)
    }

    pub fn first_violated(&self, x: &[Rational]) -> Option<usize> {
        (0..self.len()).find(|&i| self.slack(i, x).is_negative())
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.first_violated(x).is_none()
    }

    /// Indices of constraints holding with equality at `x`.
    pub fn active_set(&self, x: &[Rational]) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.slack(i, x).is_zero())
            .collect()
    }

    pub(crate) fn check_dim(&self, x: &[Rational], context: &'static str) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::dim(context, self.dim(), x.len()));
        }
        Ok(())
    }
}

/// A polytope given by a nonempty list of points. The list may contain
/// repeated or non-extreme points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VPolytope {
    vertices: Vec<RatVector>,
}

impl VPolytope {
    pub fn new(vertices: Vec<RatVector>) -> Result<Self> {
        let dim = vertices.first().ok_or(Error::EmptySet)?.dim();
        if let Some(bad) = vertices.iter().find(|v| v.dim() != dim) {
            return Err(Error::dim("polytope vertex", dim, bad.dim()));
        }
        Ok(VPolytope { vertices })
    }

    pub fn vertices(&self) -> &[RatVector] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }
}

/// `conv(points) + cone(rays)`; empty exactly when `points` is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedSet {
    points: Vec<RatVector>,
    rays: Vec<RatVector>,
    dim: usize,
}

impl GeneratedSet {
    pub fn new(points: Vec<RatVector>, rays: Vec<RatVector>, dim: usize) -> Result<Self> {
        for g in points.iter().chain(&rays) {
            if g.dim() != dim {
                return Err(Error::dim("generator", dim, g.dim()));
            }
        }
        Ok(GeneratedSet { points, rays, dim })
    }

    /// `cone(rays)`, anchored at the origin.
    pub fn cone(rays: Vec<RatVector>, dim: usize) -> Result<Self> {
        Self::new(vec![RatVector::zeros(dim)], rays, dim)
    }

    pub fn points(&self) -> &[RatVector] {
        &self.points
    }

    pub fn rays(&self) -> &[RatVector] {
        &self.rays
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `S + t`.
    pub fn translate(&self, t: &RatVector) -> GeneratedSet {
        GeneratedSet {
            points: self.points.iter().map(|p| p.add(t)).collect(),
            rays: self.rays.clone(),
            dim: self.dim,
        }
    }

    fn check(&self, y: &[Rational]) -> Result<()> {
        if y.len() != self.dim {
            return Err(Error::dim("query point", self.dim, y.len()));
        }
        if self.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(())
    }

    fn subset(&self, points: &[usize], rays: &[usize]) -> GeneratedSet {
        GeneratedSet {
            points: points.iter().map(|&j| self.points[j].clone()).collect(),
            rays: rays.iter().map(|&i| self.rays[i].clone()).collect(),
            dim: self.dim,
        }
    }

    /// Generators lifted to `(p, 1)` and `(r, 0)`.
    fn lifted(&self) -> Vec<RatVector> {
        self.points
            .iter()
            .map(|p| p.extended(int(1)))
            .chain(self.rays.iter().map(|r| r.extended(int(0))))
            .collect()
    }

    /// True when the lifted generators are linearly independent, in which
    /// case every element has a unique representation and no generator is
    /// redundant.
    fn independent(&self) -> bool {
        let lifted = self.lifted();
        rank_of(&lifted, self.dim + 1) == lifted.len()
    }
}

/// Coefficients of a representation `y = Σ μⱼ pⱼ + Σ λᵢ rᵢ`, indexed into
/// the generator lists of the set that was queried.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub points: Vec<(usize, Rational)>,
    pub rays: Vec<(usize, Rational)>,
}

impl Witness {
    pub fn apply(&self, s: &GeneratedSet) -> RatVector {
        let mut y = RatVector::zeros(s.dim());
        for (j, mu) in &self.points {
            y = y.add(&s.points[*j].scale(mu));
        }
        for (i, lambda) in &self.rays {
            y = y.add(&s.rays[*i].scale(lambda));
        }
        y
    }

    pub fn min_coefficient(&self) -> Option<&Rational> {
        self.points.iter().chain(&self.rays).map(|(_, c)| c).min()
    }

    pub fn all_positive(&self) -> bool {
        self.points.iter().chain(&self.rays).all(|(_, c)| c.is_positive())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RiStatus {
    Interior { witness: Witness },
    Boundary,
    Outside,
}

/// [`RiStatus`] without its witness.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RiKind {
    Interior,
    Boundary,
    Outside,
}

impl RiStatus {
    pub fn kind(&self) -> RiKind {
        match self {
            RiStatus::Interior { .. } => RiKind::Interior,
            RiStatus::Boundary => RiKind::Boundary,
            RiStatus::Outside => RiKind::Outside,
        }
    }
}

/// Normal cone of `p` at `x`: the cone of active constraint normals.
pub fn normal_cone(p: &HPolyhedron, x: &[Rational]) -> Result<GeneratedSet> {
    p.check_dim(x, "normal cone point")?;
    if let Some(i) = p.first_violated(x) {
        return Err(Error::OutsideDomain { constraint: i });
    }
    let rays = p
        .active_set(x)
        .into_iter()
        .map(|i| p.a().row(i).clone())
        .collect();
    GeneratedSet::cone(rays, p.dim())
}

/// Exact membership `y ∈ S` by a phase-I feasibility problem.
pub fn member(s: &GeneratedSet, y: &[Rational]) -> Result<bool> {
    s.check(y)?;
    if s.independent() {
        return Ok(independent_status(s, y).kind() != RiKind::Outside);
    }
    let k = s.points.len();
    let r = s.rays.len();
    let mut a = Vec::with_capacity(s.dim + 1);
    for d in 0..s.dim {
        let row = s
            .points
            .iter()
            .chain(&s.rays)
            .map(|g| g[d].clone())
            .collect();
        a.push(row);
    }
    let mut sum_row = vec![int(1); k];
    sum_row.resize(k + r, int(0));
    a.push(sum_row);
    let mut b = y.to_vec();
    b.push(int(1));
    let lp = StandardLp {
        a,
        b,
        c: vec![int(0); k + r],
    };
    Ok(!matches!(
        solve_standard(&lp),
        StandardOutcome::Infeasible { .. }
    ))
}

fn independent_status(s: &GeneratedSet, y: &[Rational]) -> RiStatus {
    let lifted = s.lifted();
    let m = RatMatrix::new(lifted, s.dim + 1)
        .expect("lifted generators share a dimension")
        .transpose();
    let mut rhs = y.to_vec();
    rhs.push(int(1));
    let coeffs = match solve_linear(&m, &rhs).expect("dimensions agree") {
        SolveOutcome::Unique(c) => c,
        SolveOutcome::Inconsistent => return RiStatus::Outside,
        SolveOutcome::Underdetermined { .. } => unreachable!("generators are independent"),
    };
    if coeffs.iter().any(Signed::is_negative) {
        return RiStatus::Outside;
    }
    if coeffs.iter().any(Zero::is_zero) {
        return RiStatus::Boundary;
    }
    let k = s.points.len();
    RiStatus::Interior {
        witness: Witness {
            points: coeffs[..k].iter().cloned().enumerate().collect(),
            rays: coeffs[k..].iter().cloned().enumerate().collect(),
        },
    }
}

/// Relative-interior status of `y` using every generator of `s` as given,
/// without pruning. Solves
/// `max t  s.t.  Σμⱼpⱼ + Σλᵢrᵢ = y, Σμⱼ = 1, μ ≥ t, λ ≥ t, 0 ≤ t ≤ 1`.
pub fn positive_representation(s: &GeneratedSet, y: &[Rational]) -> Result<RiStatus> {
    s.check(y)?;
    if s.independent() {
        return Ok(independent_status(s, y));
    }
    let k = s.points.len();
    let r = s.rays.len();
    // Variables: μ' (k), λ' (r), t, slack of t ≤ 1; with μ = μ' + t, λ = λ' + t.
    let nvars = k + r + 2;
    let t = k + r;
    let mut a = Vec::with_capacity(s.dim + 2);
    for d in 0..s.dim {
        let mut row: Vec<Rational> = s.points.iter().chain(&s.rays).map(|g| g[d].clone()).collect();
        let total: Rational = row.iter().cloned().sum();
        row.push(total);
        row.push(int(0));
        a.push(row);
    }
    let mut sum_row = vec![int(1); k];
    sum_row.resize(k + r, int(0));
    sum_row.push(int(k as i64));
    sum_row.push(int(0));
    a.push(sum_row);
    let mut cap = vec![int(0); nvars];
    cap[t] = int(1);
    cap[t + 1] = int(1);
    a.push(cap);

    let mut b = y.to_vec();
    b.push(int(1));
    b.push(int(1));
    let mut c = vec![int(0); nvars];
    c[t] = int(-1);

    match solve_standard(&StandardLp { a, b, c }) {
        StandardOutcome::Infeasible { .. } => Ok(RiStatus::Outside),
        StandardOutcome::Unbounded { .. } => unreachable!("t is capped at 1"),
        StandardOutcome::Optimal { z, .. } => {
            let level = &z[t];
            if level.is_zero() {
                return Ok(RiStatus::Boundary);
            }
            Ok(RiStatus::Interior {
                witness: Witness {
                    points: (0..k).map(|j| (j, &z[j] + level)).collect(),
                    rays: (0..r).map(|i| (i, &z[k + i] + level)).collect(),
                },
            })
        }
    }
}

/// Indices of the generators kept after dropping redundant ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pruned {
    pub points: Vec<usize>,
    pub rays: Vec<usize>,
}

/// Drops, in index order, every point lying in the convex hull of the other
/// remaining points plus the cone, then every ray lying in the cone of the
/// other remaining rays. The generated set is unchanged.
pub fn prune(s: &GeneratedSet) -> Result<Pruned> {
    let mut points: Vec<usize> = (0..s.points.len()).collect();
    let mut rays: Vec<usize> = (0..s.rays.len()).collect();
    if s.is_empty() || s.independent() {
        return Ok(Pruned { points, rays });
    }
    let mut j = 0;
    while j < points.len() {
        let others: Vec<usize> = points.iter().copied().filter(|&q| q != points[j]).collect();
        if !others.is_empty() && member(&s.subset(&others, &rays), &s.points[points[j]])? {
            points.remove(j);
        } else {
            j += 1;
        }
    }
    let mut i = 0;
    let origin = RatVector::zeros(s.dim);
    while i < rays.len() {
        let others: Vec<usize> = rays.iter().copied().filter(|&q| q != rays[i]).collect();
        let cone = GeneratedSet {
            points: vec![origin.clone()],
            rays: others.iter().map(|&q| s.rays[q].clone()).collect(),
            dim: s.dim,
        };
        if member(&cone, &s.rays[rays[i]])? {
            rays.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(Pruned { points, rays })
}

/// Relative-interior status of `y` in `s`. Redundant generators are pruned
/// first, so the witness is strictly positive on an irredundant generator
/// list; indices refer to `s`.
pub fn ri_membership(s: &GeneratedSet, y: &[Rational]) -> Result<RiStatus> {
    s.check(y)?;
    let kept = prune(s)?;
    let reduced = s.subset(&kept.points, &kept.rays);
    Ok(match positive_representation(&reduced, y)? {
        RiStatus::Interior { witness } => RiStatus::Interior {
            witness: Witness {
                points: witness
                    .points
                    .into_iter()
                    .map(|(j, c)| (kept.points[j], c))
                    .collect(),
                rays: witness
                    .rays
                    .into_iter()
                    .map(|(i, c)| (kept.rays[i], c))
                    .collect(),
            },
        },
        other => other,
    })
}

/// Whether `ℝ₊S` is a linear subspace: every generator `w` of the cone
/// spanned by points and rays jointly has `-w` in that cone.
pub fn positive_span_is_subspace(s: &GeneratedSet) -> Result<bool> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let gens: Vec<RatVector> = s
        .points
        .iter()
        .chain(&s.rays)
        .filter(|g| !g.is_zero())
        .map(RatVector::primitive)
        .collect();
    if gens.is_empty() {
        return Ok(true);
    }
    let cone = GeneratedSet::cone(gens.clone(), s.dim)?;
    for w in &gens {
        if !member(&cone, &w.neg())? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Indices of the stored vertices maximizing `⟨c, ·⟩`. With `c = 0` every
/// index is returned.
pub fn exposed_face(f: &VPolytope, c: &[Rational]) -> Result<Vec<usize>> {
    if c.len() != f.dim() {
        return Err(Error::dim("face direction", f.dim(), c.len()));
    }
    let values: Vec<Rational> = f.vertices.iter().map(|v| v.dot(c)).collect();
    let best = values.iter().max().ok_or(Error::EmptySet)?;
    Ok(values
        .iter()
        .enumerate()
        .filter(|(_, v)| *v == best)
        .map(|(i, _)| i)
        .collect())
}
