//! Exact rational scalars, vectors and matrices.
//!
//! Every geometric decision downstream (activity of a constraint, sign of a
//! multiplier, relative-interior status) is an exact comparison on values
//! from this module. There is no tolerance anywhere in the crate.

use std::fmt;
use std::ops::{Deref, Index};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational in canonical form (reduced, positive denominator).
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den`, reduced. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses the rational token format: optional `-`, decimal digits, and an
/// optional `/` followed by a positive decimal denominator.
pub fn parse_rational(token: &str) -> Result<Rational> {
    let bad = |reason| Error::BadRational {
        token: token.to_string(),
        reason,
    };
    let (negative, body) = match token.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, token),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) {
        return Err(bad("expected decimal digits"));
    }
    let mut numer: BigInt = num.parse().map_err(|_| bad("expected decimal digits"))?;
    if negative {
        numer = -numer;
    }
    let denom = match den {
        Some(d) => {
            if !digits(d) {
                return Err(bad("expected decimal digits after '/'"));
            }
            let d: BigInt = d.parse().map_err(|_| bad("expected decimal digits after '/'"))?;
            if d.is_zero() {
                return Err(bad("zero denominator"));
            }
            d
        }
        None => BigInt::one(),
    };
    Ok(Rational::new(numer, denom))
}

/// Parses a list of rational tokens separated by `sep` (surrounding
/// whitespace ignored).
pub fn parse_rational_list(text: &str, sep: char) -> Result<RatVector> {
    text.split(sep)
        .map(|tok| parse_rational(tok.trim()))
        .collect::<Result<Vec<_>>>()
        .map(RatVector::from)
}

/// Dense vector of rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RatVector(Vec<Rational>);

impl RatVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        RatVector(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        RatVector(vec![Rational::zero(); dim])
    }

    pub fn unit(dim: usize, k: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[k] = Rational::one();
        v
    }

    pub fn from_ints(values: &[i64]) -> Self {
        values.iter().map(|&x| int(x)).collect()
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Rational> {
        self.0
    }

    pub fn dot(&self, other: &[Rational]) -> Rational {
        debug_assert_eq!(self.dim(), other.len());
        dot(&self.0, other)
    }

    pub fn norm_sq(&self) -> Rational {
        dot(&self.0, &self.0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &RatVector) -> RatVector {
        self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()
    }

    pub fn sub(&self, other: &RatVector) -> RatVector {
        self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()
    }

    pub fn scale(&self, k: &Rational) -> RatVector {
        self.0.iter().map(|a| a * k).collect()
    }

    pub fn neg(&self) -> RatVector {
        self.0.iter().map(|a| -a).collect()
    }

    /// Appends one coordinate.
    pub fn extended(&self, last: Rational) -> RatVector {
        let mut v = self.0.clone();
        v.push(last);
        RatVector(v)
    }

    /// Rational tokens joined by `sep`, e.g. `1/2;-3`.
    pub fn tokens(&self, sep: &str) -> String {
        self.0
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// The positive multiple of `self` that is a primitive integer vector.
    /// Zero stays zero.
    pub fn primitive(&self) -> RatVector {
        let ints = clear_denominators(&self.0);
        let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if g.is_zero() {
            return self.clone();
        }
        ints.into_iter()
            .map(|x| Rational::from_integer(x / &g))
            .collect()
    }
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// Multiplies the entries by the (positive) lcm of their denominators.
pub(crate) fn clear_denominators(v: &[Rational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    v.iter()
        .map(|x| x.numer() * (&l / x.denom()))
        .collect()
}

impl Deref for RatVector {
    type Target = [Rational];
    fn deref(&self) -> &[Rational] {
        &self.0
    }
}

impl<I: std::slice::SliceIndex<[Rational]>> Index<I> for RatVector {
    type Output = I::Output;
    fn index(&self, i: I) -> &I::Output {
        &self.0[i]
    }
}

impl From<Vec<Rational>> for RatVector {
    fn from(v: Vec<Rational>) -> Self {
        RatVector(v)
    }
}

impl FromIterator<Rational> for RatVector {
    fn from_iter<I: IntoIterator<Item = Rational>>(iter: I) -> Self {
        RatVector(iter.into_iter().collect())
    }
}

impl IntoIterator for RatVector {
    type Item = Rational;
    type IntoIter = std::vec::IntoIter<Rational>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl fmt::Display for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.tokens(", "))
    }
}

impl Serialize for RatVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|x| x.to_string()))
    }
}

/// Dense row-major matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: Vec<RatVector>,
    cols: usize,
}

impl RatMatrix {
    pub fn new(rows: Vec<RatVector>, cols: usize) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.dim() != cols) {
            return Err(Error::dim("matrix row", cols, bad.dim()));
        }
        Ok(RatMatrix { rows, cols })
    }

    /// Builds from nonempty rows, taking the column count from the first row.
    pub fn from_rows(rows: Vec<RatVector>) -> Result<Self> {
        let cols = rows.first().map_or(0, RatVector::dim);
        Self::new(rows, cols)
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let rows: Vec<RatVector> = rows.iter().map(|r| RatVector::from_ints(r)).collect();
        Self::from_rows(rows).expect("rectangular literal")
    }

    pub fn empty(cols: usize) -> Self {
        RatMatrix {
            rows: Vec::new(),
            cols,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[RatVector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &RatVector {
        &self.rows[i]
    }

    pub fn transpose(&self) -> RatMatrix {
        let rows = (0..self.cols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        RatMatrix {
            rows,
            cols: self.rows.len(),
        }
    }

    pub fn mul_vec(&self, x: &[Rational]) -> RatVector {
        self.rows.iter().map(|r| r.dot(x)).collect()
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }
}

/// Result of an exact linear solve `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Unique(RatVector),
    Inconsistent,
    /// A particular solution (free variables set to zero) and a kernel basis.
    Underdetermined {
        particular: RatVector,
        kernel: Vec<RatVector>,
    },
}

/// Solves `A x = b` exactly by Gauss-Jordan elimination.
pub fn solve_linear(a: &RatMatrix, b: &[Rational]) -> Result<SolveOutcome> {
    if a.nrows() != b.len() {
        return Err(Error::dim("right-hand side", a.nrows(), b.len()));
    }
    let n = a.ncols();
    let mut rows: Vec<Vec<Rational>> = a
        .rows
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut row = r.0.clone();
            row.push(bi.clone());
            row
        })
        .collect();

    let pivots = rref(&mut rows, n);
    let rank = pivots.len();
    if rows[rank..].iter().any(|r| !r[n].is_zero()) {
        return Ok(SolveOutcome::Inconsistent);
    }

    let mut particular = vec![Rational::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = rows[r][n].clone();
    }
    if rank == n {
        return Ok(SolveOutcome::Unique(RatVector(particular)));
    }

    let mut is_pivot = vec![false; n];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let kernel = (0..n)
        .filter(|&j| !is_pivot[j])
        .map(|free| {
            let mut k = vec![Rational::zero(); n];
            k[free] = Rational::one();
            for (r, &c) in pivots.iter().enumerate() {
                k[c] = -&rows[r][free];
            }
            RatVector(k)
        })
        .collect();
    Ok(SolveOutcome::Underdetermined {
        particular: RatVector(particular),
        kernel,
    })
}

/// Reduces `rows` in place to reduced row echelon form over the first
/// `ncols` columns and returns the pivot columns in row order.
fn rref(rows: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Exact rank by fraction-free (Bareiss) elimination on the row-scaled
/// integer matrix.
pub fn rank(a: &RatMatrix) -> usize {
    let mut m: Vec<Vec<BigInt>> = a.rows.iter().map(|r| clear_denominators(&r.0)).collect();
    bareiss_rank(&mut m, a.cols)
}

pub(crate) fn rank_of(vectors: &[RatVector], dim: usize) -> usize {
    let mut m: Vec<Vec<BigInt>> = vectors.iter().map(|r| clear_denominators(&r.0)).collect();
    bareiss_rank(&mut m, dim)
}

fn bareiss_rank(m: &mut [Vec<BigInt>], ncols: usize) -> usize {
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            for j in c + 1..ncols {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                // Bareiss: the division is exact.
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}
