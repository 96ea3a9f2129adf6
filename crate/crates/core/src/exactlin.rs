//! Exact rational scalars and dense rational matrices.
//!
//! Every number in this crate is a [`Rational`]: an arbitrary-precision
//! fraction kept in lowest terms with a positive denominator. Nothing here
//! ever rounds.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact fraction. Canonical after every operation.
pub type Rational = BigRational;

/// Builds `num/den` from machine integers.
///
/// # Panics
///
/// Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds an integer-valued rational.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses the text form `"p"` or `"p/q"`.
///
/// Decimal and exponent notation are rejected. The result is reduced, so
/// `"2/4"` parses to `1/2`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not a rational literal: {text:?}"));
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), Some(q.trim())),
        None => (s, None),
    };
    let is_int = |t: &str| {
        let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !is_int(num) || !den.is_none_or(is_int) {
        return Err(bad());
    }
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = match den {
        Some(q) => q.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Parses a comma-separated list of rational literals, e.g. `"2,1,5/3,0"`.
pub fn parse_rational_list(text: &str) -> Result<Vec<Rational>> {
    if text.trim().is_empty() {
        return Err(Error::Parse("empty rational list".into()));
    }
    text.split(',').map(parse_rational).collect()
}

/// Canonical text form: `"p"` when the denominator is 1, `"p/q"` otherwise.
pub fn format_rational(value: &Rational) -> String {
    // Ratio's Display already prints the bare numerator for integers.
    value.to_string()
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// The matrix unit `E_{i,j}` of size `n`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(i, j)] = Rational::one();
        m
    }

    pub fn diagonal(values: &[Rational]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    /// Builds a matrix from rows; every row must have the same length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch(format!(
                "ragged rows: expected {c} columns, found {}",
                bad.len()
            )));
        }
        Ok(RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| int(v)).collect())
                .collect(),
        )
        .expect("rectangular input")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Nonzero entries as `(row, col, value)` in row-major order.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(k, v)| (k / self.cols, k % self.cols, v))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn trace(&self) -> Result<Rational> {
        require_square(self)?;
        Ok((0..self.rows).map(|i| self[(i, i)].clone()).sum())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * k).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(format_rational).collect())
            .collect();
        write!(f, "RatMatrix{rows:?}")
    }
}

fn require_square(a: &RatMatrix) -> Result<()> {
    if a.is_square() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!(
            "expected a square matrix, got {}x{}",
            a.rows, a.cols
        )))
    }
}

/// Exact matrix product `a · b`.
pub fn mat_mul(a: &RatMatrix, b: &RatMatrix) -> Result<RatMatrix> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = RatMatrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for (k, aik) in a.row(i).iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..b.cols {
                let bkj = &b[(k, j)];
                if !bkj.is_zero() {
                    out[(i, j)] += aik * bkj;
                }
            }
        }
    }
    Ok(out)
}

/// `xy − yx` for square matrices of equal size.
pub fn commutator(x: &RatMatrix, y: &RatMatrix) -> Result<RatMatrix> {
    require_square(x)?;
    require_square(y)?;
    if x.rows != y.rows {
        return Err(Error::DimensionMismatch(format!(
            "commutator of {0}x{0} and {1}x{1}",
            x.rows, y.rows
        )));
    }
    mat_mul(x, y)?.sub(&mat_mul(y, x)?)
}

/// Outcome of fraction-free forward elimination.
struct Echelon {
    /// Upper-triangular working matrix (augmented columns included).
    work: RatMatrix,
    /// Number of pivots found in the leading square block.
    rank: usize,
    /// Determinant of the square block (zero when rank-deficient).
    det: Rational,
}

/// Bareiss elimination over the first `n` columns of `work`, which is
/// `n × (n + extra)`. Pivot choice is the first nonzero entry scanning down
/// the current column.
fn bareiss(mut work: RatMatrix) -> Echelon {
    let n = work.rows;
    let width = work.cols;
    let mut prev = Rational::one();
    let mut sign_negative = false;
    let mut rank = 0;
    let mut row = 0;

    for col in 0..n {
        let Some(p) = (row..n).find(|&r| !work[(r, col)].is_zero()) else {
            continue;
        };
        if p != row {
            for j in 0..width {
                work.data.swap(p * width + j, row * width + j);
            }
            sign_negative = !sign_negative;
        }
        let pivot = work[(row, col)].clone();
        for r in row + 1..n {
            let factor = work[(r, col)].clone();
            for j in 0..width {
                let v = (&pivot * &work[(r, j)] - &factor * &work[(row, j)]) / &prev;
                work[(r, j)] = v;
            }
        }
        prev = pivot;
        rank += 1;
        row += 1;
    }

    let det = if rank < n {
        Rational::zero()
    } else if n == 0 {
        Rational::one()
    } else if sign_negative {
        -work[(n - 1, n - 1)].clone()
    } else {
        work[(n - 1, n - 1)].clone()
    };
    Echelon { work, rank, det }
}

/// Exact determinant via Bareiss elimination.
pub fn determinant(a: &RatMatrix) -> Result<Rational> {
    require_square(a)?;
    Ok(bareiss(a.clone()).det)
}

/// Exact rank.
pub fn rank(a: &RatMatrix) -> Result<usize> {
    require_square(a)?;
    Ok(bareiss(a.clone()).rank)
}

/// Exact inverse.
///
/// Returns [`Error::SingularMatrix`] with the rank found when `a` is not
/// invertible.
pub fn mat_inverse(a: &RatMatrix) -> Result<RatMatrix> {
    require_square(a)?;
    let n = a.rows;
    let mut aug = RatMatrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, n + i)] = Rational::one();
    }
    let Echelon { work, rank, .. } = bareiss(aug);
    if rank < n {
        return Err(Error::SingularMatrix { rank });
    }

    // Back substitution on the triangular system, one right-hand column at a time.
    let mut inv = RatMatrix::zeros(n, n);
    for col in 0..n {
        for i in (0..n).rev() {
            let mut acc = work[(i, n + col)].clone();
            for k in i + 1..n {
                let wik = &work[(i, k)];
                if !wik.is_zero() {
                    acc -= wik * &inv[(k, col)];
                }
            }
            inv[(i, col)] = acc / &work[(i, i)];
        }
    }
    Ok(inv)
}

/// True when `value` is in lowest terms with a positive denominator.
pub fn is_canonical(value: &Rational) -> bool {
    use num_integer::Integer;
    value.denom().is_positive()
        && value.numer().gcd(value.denom()).is_one()
        && (!value.numer().is_zero() || value.denom().is_one())
}
