//! Brute-force oracles and random instance generators shared by the
//! integration tests and the acceptance runner. Nothing here calls the
//! library's geometry or LP code; only its scalar and vector types.

#![allow(dead_code)]

use std::collections::BTreeSet;

use nondegen::exact::{int, ratio, RatMatrix, RatVector, Rational};
use nondegen::geometry::{GeneratedSet, HPolyhedron};
use nondegen::lp::{solve_lp, LinearProgram, LpOutcome};
use nondegen::subdiff::{AffinePiece, PolyhedralFunction};
use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

// ---------------------------------------------------------------------------
// Small exact linear algebra, written independently of the library.

/// Solves a square system by Gaussian elimination; `None` if singular.
pub fn solve_square(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] / &a[col][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row).skip(col) {
                    *x -= &f * y;
                }
                let t = &f * &b[col];
                b[r] -= t;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// Rank by plain elimination.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row).skip(c) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

/// A nonzero vector orthogonal to `n - 1` independent rows of length `n`.
fn orthogonal(rows: &[Vec<Rational>], n: usize) -> Option<Vec<Rational>> {
    // Try each coordinate as the free one, set it to 1 and solve for the rest.
    for free in 0..n {
        let a: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| (0..n).filter(|&k| k != free).map(|k| r[k].clone()).collect())
            .collect();
        let b: Vec<Rational> = rows.iter().map(|r| -&r[free]).collect();
        if let Some(sol) = solve_square(a, b) {
            let mut v = Vec::with_capacity(n);
            let mut it = sol.into_iter();
            for k in 0..n {
                v.push(if k == free { int(1) } else { it.next().unwrap() });
            }
            return Some(v);
        }
    }
    None
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

// ---------------------------------------------------------------------------
// Fourier-Motzkin H-representation oracle for relative-interior membership.

#[derive(Clone, Debug, PartialEq, Eq)]
struct Row {
    a: Vec<Rational>,
    b: Rational,
    origin: BTreeSet<usize>,
}

fn normalize(mut r: Row) -> Row {
    // Scale so the first nonzero coefficient has absolute value 1.
    if let Some(p) = r.a.iter().find(|x| !x.is_zero()).cloned() {
        let s = p.abs();
        for x in &mut r.a {
            *x = &*x / &s;
        }
        r.b = &r.b / &s;
    }
    r
}

/// Inequalities `a·y ≤ b` describing `conv(points) + cone(rays)` in `ℝᵈ`,
/// obtained by eliminating the multipliers from
/// `y = Σλᵢpᵢ + Σμⱼrⱼ, Σλᵢ = 1, λ, μ ≥ 0`. Equalities are substituted
/// first; the rest is Fourier-Motzkin with Chernikov's redundancy rule.
pub fn fm_hrep(points: &[RatVector], rays: &[RatVector], d: usize) -> Vec<(Vec<Rational>, Rational)> {
    let (k, l) = (points.len(), rays.len());
    let nv = d + k + l;
    let mut eqs: Vec<(Vec<Rational>, Rational)> = Vec::new();
    for c in 0..d {
        let mut a = vec![Rational::zero(); nv];
        a[c] = int(1);
        for (i, p) in points.iter().enumerate() {
            a[d + i] = -&p[c];
        }
        for (j, r) in rays.iter().enumerate() {
            a[d + k + j] = -&r[c];
        }
        eqs.push((a, Rational::zero()));
    }
    let mut sum = vec![Rational::zero(); nv];
    for i in 0..k {
        sum[d + i] = int(1);
    }
    eqs.push((sum, int(1)));
    let mut ineqs: Vec<Row> = (0..k + l)
        .map(|i| {
            let mut a = vec![Rational::zero(); nv];
            a[d + i] = int(-1);
            Row {
                a,
                b: Rational::zero(),
                origin: BTreeSet::from([i]),
            }
        })
        .collect();

    let mut remaining: Vec<usize> = (d..nv).collect();
    // Substitute equalities.
    loop {
        let pick = remaining.iter().enumerate().find_map(|(pos, &t)| {
            eqs.iter().position(|(a, _)| !a[t].is_zero()).map(|e| (pos, t, e))
        });
        let Some((pos, t, e)) = pick else { break };
        remaining.remove(pos);
        let (ea, eb) = eqs.remove(e);
        let sub = |a: &mut Vec<Rational>, b: &mut Rational| {
            if a[t].is_zero() {
                return;
            }
            let f = &a[t] / &ea[t];
            for (x, y) in a.iter_mut().zip(&ea) {
                *x -= &f * y;
            }
            *b -= &f * &eb;
        };
        for (a, b) in &mut eqs {
            sub(a, b);
        }
        for r in &mut ineqs {
            sub(&mut r.a, &mut r.b);
        }
    }
    // Fourier-Motzkin on what is left.
    for (step, &t) in remaining.iter().enumerate() {
        let (mut pos, mut neg, mut keep) = (Vec::new(), Vec::new(), Vec::new());
        for r in ineqs {
            if r.a[t].is_positive() {
                pos.push(r);
            } else if r.a[t].is_negative() {
                neg.push(r);
            } else {
                keep.push(r);
            }
        }
        for p in &pos {
            for q in &neg {
                let origin: BTreeSet<usize> = p.origin.union(&q.origin).cloned().collect();
                if origin.len() > step + 2 {
                    continue;
                }
                let (sp, sq) = (-&q.a[t], p.a[t].clone());
                let a: Vec<Rational> = p.a.iter().zip(&q.a).map(|(x, y)| x * &sp + y * &sq).collect();
                let b = &p.b * &sp + &q.b * &sq;
                let row = normalize(Row { a, b, origin });
                if !keep.iter().any(|r: &Row| r.a == row.a && r.b == row.b) {
                    keep.push(row);
                }
            }
        }
        ineqs = keep;
    }
    let mut out: Vec<(Vec<Rational>, Rational)> = Vec::new();
    for (a, b) in eqs {
        let a: Vec<Rational> = a[..d].to_vec();
        out.push((a.iter().map(|x| -x).collect(), -&b));
        out.push((a, b));
    }
    for r in ineqs {
        out.push((r.a[..d].to_vec(), r.b));
    }
    out.retain(|(a, b)| {
        if a.iter().all(Zero::is_zero) {
            assert!(!b.is_negative(), "oracle derived an infeasible row for a nonempty set");
            false
        } else {
            true
        }
    });
    out
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Ri {
    Interior,
    Boundary,
    Outside,
}

/// Membership of `y` in the set and in its relative interior, from the
/// H-representation: rows tight on every generator are the implicit
/// equalities; `y` is relatively interior when it satisfies every other
/// row strictly.
pub fn ri_oracle(s: &GeneratedSet, y: &[Rational]) -> Ri {
    let d = s.dim();
    let h = fm_hrep(s.points(), s.rays(), d);
    if h.iter().any(|(a, b)| &dot(a, y) > b) {
        return Ri::Outside;
    }
    for (a, b) in &h {
        let implicit = s.points().iter().all(|p| &dot(a, p) == b) && s.rays().iter().all(|r| dot(a, r).is_zero());
        if !implicit && &dot(a, y) == b {
            return Ri::Boundary;
        }
    }
    Ri::Interior
}

pub fn random_generated_set(rng: &mut TestRng) -> GeneratedSet {
    let d = rng.gen_range(1..=3);
    let k = rng.gen_range(1..=4);
    let l = rng.gen_range(0..=3);
    let vec = |rng: &mut TestRng| -> RatVector { (0..d).map(|_| int(rng.gen_range(-3..=3))).collect() };
    let mut points: Vec<RatVector> = (0..k).map(|_| vec(rng)).collect();
    let mut rays: Vec<RatVector> = (0..l).map(|_| vec(rng)).collect();
    match rng.gen_range(0..6) {
        // a line through the set
        0 if !rays.is_empty() => {
            let r = rays[0].neg();
            rays.push(r);
        }
        1 => points.push(points[0].clone()),
        // coplanar points in a higher dimension
        2 if d == 3 => {
            for p in &mut points {
                p.clone_from(&RatVector::new(vec![p[0].clone(), p[1].clone(), int(1)]));
            }
        }
        _ => {}
    }
    GeneratedSet::new(points, rays, d).unwrap()
}

/// Query points that exercise all three outcomes.
pub fn random_query(rng: &mut TestRng, s: &GeneratedSet) -> RatVector {
    let d = s.dim();
    let weight = |rng: &mut TestRng, zero_ok: bool| -> Rational {
        if zero_ok && rng.gen_bool(0.4) {
            Rational::zero()
        } else {
            ratio(rng.gen_range(1..=5), rng.gen_range(1..=4))
        }
    };
    match rng.gen_range(0..5) {
        0 => (0..d).map(|_| ratio(rng.gen_range(-8..=8), rng.gen_range(1..=3))).collect(),
        1 => s.points()[rng.gen_range(0..s.points().len())].clone(),
        kind => {
            let zero_ok = kind == 4;
            let mut ws: Vec<Rational> = (0..s.points().len()).map(|_| weight(rng, zero_ok)).collect();
            let total: Rational = ws.iter().sum();
            if total.is_zero() {
                ws[0] = int(1);
            }
            let total: Rational = ws.iter().sum();
            let mut y = RatVector::zeros(d);
            for (w, p) in ws.iter().zip(s.points()) {
                y = y.add(&p.scale(&(w / &total)));
            }
            for r in s.rays() {
                y = y.add(&r.scale(&weight(rng, zero_ok)));
            }
            y
        }
    }
}

// ---------------------------------------------------------------------------
// Basic-point enumeration oracle for LPs.

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOracle {
    Optimal(Rational),
    Unbounded,
    Infeasible,
    /// The constraint matrix has rank below the dimension: no vertices.
    NotPointed,
}

/// `max ⟨c, x⟩` over `A x ≤ b` for pointed polyhedra: the vertices are the
/// feasible solutions of nonsingular `n × n` row subsystems, and the
/// extreme rays are the feasible kernel directions of rank `n - 1`
/// subsystems.
pub fn lp_oracle(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> LpOracle {
    let n = c.len();
    if rank(a) < n {
        return LpOracle::NotPointed;
    }
    let feasible = |x: &[Rational]| a.iter().zip(b).all(|(row, bi)| &dot(row, x) <= bi);
    let mut best: Option<Rational> = None;
    for s in subsets(a.len(), n) {
        let rows: Vec<Vec<Rational>> = s.iter().map(|&i| a[i].clone()).collect();
        let rhs: Vec<Rational> = s.iter().map(|&i| b[i].clone()).collect();
        if let Some(x) = solve_square(rows, rhs) {
            if feasible(&x) {
                let val = dot(c, &x);
                if best.as_ref().is_none_or(|v| &val > v) {
                    best = Some(val);
                }
            }
        }
    }
    let Some(best) = best else { return LpOracle::Infeasible };
    for s in subsets(a.len(), n - 1) {
        let rows: Vec<Vec<Rational>> = s.iter().map(|&i| a[i].clone()).collect();
        if rank(&rows) != n - 1 {
            continue;
        }
        let r = orthogonal(&rows, n).expect("rank n - 1");
        for r in [r.clone(), r.iter().map(|x| -x).collect()] {
            let recession = a.iter().all(|row| !dot(row, &r).is_positive());
            if recession && dot(c, &r).is_positive() {
                return LpOracle::Unbounded;
            }
        }
    }
    LpOracle::Optimal(best)
}

pub fn random_lp(rng: &mut TestRng) -> (Vec<Vec<Rational>>, Vec<Rational>, Vec<Rational>) {
    loop {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(n..=8);
        let a: Vec<Vec<Rational>> = (0..m).map(|_| (0..n).map(|_| int(rng.gen_range(-4..=4))).collect()).collect();
        let b: Vec<Rational> = (0..m)
            .map(|_| {
                // mostly containing the origin, sometimes infeasible
                let lo = if rng.gen_bool(0.2) { -6 } else { 0 };
                ratio(rng.gen_range(lo..=6), rng.gen_range(1..=2))
            })
            .collect();
        let c: Vec<Rational> = (0..n).map(|_| int(rng.gen_range(-3..=3))).collect();
        if rank(&a) == n {
            return (a, b, c);
        }
    }
}

pub fn to_lp(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> LinearProgram {
    let n = c.len();
    let p = HPolyhedron::new(
        RatMatrix::new(a.iter().cloned().map(RatVector::new).collect(), n).unwrap(),
        RatVector::new(b.to_vec()),
    )
    .unwrap();
    LinearProgram::new(RatVector::new(c.to_vec()), p).unwrap()
}

/// Compares `solve_lp` with the oracle; `Err` describes a disagreement.
pub fn check_lp(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> Result<(), String> {
    let lp = to_lp(a, b, c);
    let got = solve_lp(&lp);
    let want = lp_oracle(a, b, c);
    match (&got, &want) {
        (LpOutcome::Optimal { value, .. }, LpOracle::Optimal(v)) if value == v => Ok(()),
        (LpOutcome::Unbounded { .. }, LpOracle::Unbounded) => Ok(()),
        (LpOutcome::Infeasible { .. }, LpOracle::Infeasible) => Ok(()),
        _ => Err(format!("A={a:?} b={b:?} c={c:?}: solver {got:?}, oracle {want:?}")),
    }
}

// ---------------------------------------------------------------------------
// One-dimensional oracles.

/// A univariate polyhedral function: max of `slope·x + offset` (zero when
/// there are no pieces) on the interval `[lo, hi]`.
#[derive(Clone, Debug)]
pub struct Univariate {
    pub pieces: Vec<(Rational, Rational)>,
    pub lo: Option<Rational>,
    pub hi: Option<Rational>,
}

impl Univariate {
    pub fn eval(&self, x: &Rational) -> Rational {
        self.pieces
            .iter()
            .map(|(c, d)| c * x + d)
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.lo.as_ref().is_none_or(|lo| x >= lo) && self.hi.as_ref().is_none_or(|hi| x <= hi)
    }

    /// Kinks of the max, domain ends, and zero.
    fn breakpoints(&self) -> Vec<Rational> {
        let mut xs = vec![Rational::zero()];
        for (i, (c1, d1)) in self.pieces.iter().enumerate() {
            for (c2, d2) in &self.pieces[i + 1..] {
                if c1 != c2 {
                    xs.push((d2 - d1) / (c1 - c2));
                }
            }
        }
        xs.extend(self.lo.iter().cloned());
        xs.extend(self.hi.iter().cloned());
        xs.retain(|x| self.contains(x));
        xs
    }

    fn slopes(&self) -> (Rational, Rational) {
        let lo = self.pieces.iter().map(|p| p.0.clone()).min().unwrap_or_else(Rational::zero);
        let hi = self.pieces.iter().map(|p| p.0.clone()).max().unwrap_or_else(Rational::zero);
        (lo, hi)
    }

    /// `∂f(x)` as an interval; `None` marks an infinite end.
    pub fn subdifferential(&self, x: &Rational) -> (Option<Rational>, Option<Rational>) {
        let active: Vec<&Rational> = if self.pieces.is_empty() {
            Vec::new()
        } else {
            let top = self.eval(x);
            self.pieces
                .iter()
                .filter(|(c, d)| c * x + d == top)
                .map(|(c, _)| c)
                .collect()
        };
        let zero = Rational::zero();
        let left = active.iter().cloned().min().unwrap_or(&zero).clone();
        let right = active.iter().cloned().max().unwrap_or(&zero).clone();
        let at_lo = self.lo.as_ref() == Some(x);
        let at_hi = self.hi.as_ref() == Some(x);
        (
            (!at_lo).then_some(left),
            (!at_hi).then_some(right),
        )
    }

    pub fn to_function(&self) -> PolyhedralFunction {
        let pieces = self
            .pieces
            .iter()
            .map(|(c, d)| AffinePiece::new(RatVector::new(vec![c.clone()]), d.clone()))
            .collect();
        let mut rows = Vec::new();
        if let Some(hi) = &self.hi {
            rows.push((RatVector::from_ints(&[1]), hi.clone()));
        }
        if let Some(lo) = &self.lo {
            rows.push((RatVector::from_ints(&[-1]), -lo));
        }
        PolyhedralFunction::new(1, pieces, HPolyhedron::from_rows(rows, 1).unwrap()).unwrap()
    }
}

pub fn random_univariate(rng: &mut TestRng) -> Univariate {
    let k = rng.gen_range(0..=6);
    let pieces = (0..k)
        .map(|_| (ratio(rng.gen_range(-6..=6), rng.gen_range(1..=3)), int(rng.gen_range(-4..=4))))
        .collect();
    let lo = rng.gen_bool(0.4).then(|| int(rng.gen_range(-4..=0)));
    let hi = rng.gen_bool(0.4).then(|| int(rng.gen_range(0..=4)));
    let mut f = Univariate { pieces, lo, hi };
    if f.pieces.is_empty() && f.lo.is_none() && f.hi.is_none() {
        f.hi = Some(int(1));
    }
    f
}

/// Minimum value of `f(x) - v x`, or `None` when unbounded below.
pub fn min_oracle(f: &Univariate, v: &Rational) -> Option<Rational> {
    let (smin, smax) = f.slopes();
    if f.hi.is_none() && smax < *v {
        return None;
    }
    if f.lo.is_none() && smin > *v {
        return None;
    }
    f.breakpoints().iter().map(|x| f.eval(x) - v * x).min()
}

/// `argmin f(x) + ½(x - c)²`: the minimum over breakpoints and the
/// stationary point of every piece.
pub fn prox_oracle(f: &Univariate, c: &Rational) -> Rational {
    let mut xs = f.breakpoints();
    xs.push(c.clone());
    xs.extend(f.pieces.iter().map(|(s, _)| c - s));
    xs.retain(|x| f.contains(x));
    let half = ratio(1, 2);
    let obj = |x: &Rational| f.eval(x) + &half * (x - c) * (x - c);
    xs.into_iter().min_by(|a, b| obj(a).cmp(&obj(b))).unwrap()
}

/// Critical points of `f - (ρ/2)x² - v x`, i.e. `v + ρx ∈ ∂f(x)`, with
/// `true` for nondegenerate (`v + ρx` in the interior of the interval, or
/// the interval is a single point).
pub fn critical_oracle(f: &Univariate, rho: &Rational, v: &Rational) -> Vec<(Rational, bool)> {
    let mut xs = f.breakpoints();
    xs.extend(f.pieces.iter().map(|(s, _)| (s - v) / rho));
    if f.pieces.is_empty() {
        xs.push(-v / rho);
    }
    xs.retain(|x| f.contains(x));
    xs.sort();
    xs.dedup();
    let mut out = Vec::new();
    for x in xs {
        let w = v + rho * &x;
        let (l, r) = f.subdifferential(&x);
        let above = l.as_ref().is_none_or(|l| &w >= l);
        let below = r.as_ref().is_none_or(|r| &w <= r);
        if above && below {
            let singleton = l.is_some() && l == r;
            let strict = l.as_ref().is_none_or(|l| &w > l) && r.as_ref().is_none_or(|r| &w < r);
            out.push((x, singleton || strict));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Random polyhedral functions and named instances.

/// A proper function with at most `max_gens` pieces and constraints in
/// total. The origin is always in the domain.
pub fn random_function(rng: &mut TestRng, dim: usize, max_gens: usize) -> PolyhedralFunction {
    let small = |rng: &mut TestRng| -> Rational {
        if rng.gen_bool(0.2) {
            ratio(rng.gen_range(-6..=6), 2)
        } else {
            int(rng.gen_range(-3..=3))
        }
    };
    loop {
        let p = rng.gen_range(0..=max_gens.min(3));
        let m = rng.gen_range(0..=max_gens - p);
        if p + m == 0 {
            continue;
        }
        let pieces: Vec<AffinePiece> = (0..p)
            .map(|_| AffinePiece::new((0..dim).map(|_| small(rng)).collect(), small(rng)))
            .collect();
        let rows: Vec<(RatVector, Rational)> = (0..m)
            .map(|_| {
                let a: RatVector = (0..dim).map(|_| small(rng)).collect();
                (a, int(rng.gen_range(0..=3)))
            })
            .filter(|(a, _)| !a.is_zero())
            .collect();
        let domain = HPolyhedron::from_rows(rows, dim).unwrap();
        return PolyhedralFunction::new(dim, pieces, domain).unwrap();
    }
}

pub fn box_function(n: usize) -> PolyhedralFunction {
    PolyhedralFunction::indicator(HPolyhedron::hypercube(n, &int(1)))
}

/// `{x ≥ 0, Σx ≤ 1}`.
pub fn simplex_function(n: usize) -> PolyhedralFunction {
    let mut rows: Vec<(RatVector, Rational)> = (0..n).map(|k| (RatVector::unit(n, k).neg(), int(0))).collect();
    rows.push(((0..n).map(|_| int(1)).collect(), int(1)));
    PolyhedralFunction::indicator(HPolyhedron::from_rows(rows, n).unwrap())
}

/// Square pyramid `z ≥ 0, ±x + z ≤ 1, ±y + z ≤ 1`: four facets meet at the
/// apex `(0, 0, 1)`.
pub fn pyramid_function() -> PolyhedralFunction {
    let rows = vec![
        (RatVector::from_ints(&[0, 0, -1]), int(0)),
        (RatVector::from_ints(&[1, 0, 1]), int(1)),
        (RatVector::from_ints(&[-1, 0, 1]), int(1)),
        (RatVector::from_ints(&[0, 1, 1]), int(1)),
        (RatVector::from_ints(&[0, -1, 1]), int(1)),
    ];
    PolyhedralFunction::indicator(HPolyhedron::from_rows(rows, 3).unwrap())
}

/// Bounded polytope with `m` random constraints in `ℝ³` containing the
/// origin in its interior. Boundedness is checked by maximizing `±eₖ`.
pub fn random_polytope(rng: &mut TestRng, m: usize) -> PolyhedralFunction {
    loop {
        let rows: Vec<(RatVector, Rational)> = (0..m)
            .map(|_| {
                let a: RatVector = (0..3).map(|_| int(rng.gen_range(-5..=5))).collect();
                (a, int(rng.gen_range(1..=6)))
            })
            .collect();
        if rows.iter().any(|(a, _)| a.is_zero()) {
            continue;
        }
        let p = HPolyhedron::from_rows(rows, 3).unwrap();
        let bounded = (0..3).all(|k| {
            [RatVector::unit(3, k), RatVector::unit(3, k).neg()].into_iter().all(|c| {
                matches!(solve_lp(&LinearProgram::new(c, p.clone()).unwrap()), LpOutcome::Optimal { .. })
            })
        });
        if bounded {
            return PolyhedralFunction::indicator(p);
        }
    }
}
