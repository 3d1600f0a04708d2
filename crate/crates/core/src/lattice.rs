//! Exact rational vectors and matrices, and conversions between the ambient
//! (ε / e_i) basis, the simple-root basis and the fundamental-weight basis.
//!
//! Everything here is exact. Weights of type B spin representations and of the
//! E-series carry half-integer (and for E6/E7, third-integer) coordinates, and
//! the alternating sums downstream cancel large terms, so there is no floating
//! point anywhere in the crate.

use std::fmt;
use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rootsystem::RootSystem;

/// Arbitrary precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Coordinate vector with exact rational entries.
///
/// Equality and hashing go through the reduced fractions, so vectors can be
/// used directly as map keys.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RationalVector {
    coords: Vec<Rational>,
}

impl RationalVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self { coords }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            coords: vec![Rational::zero(); dim],
        }
    }

    /// Standard basis vector e_{index} (0-based).
    pub fn unit(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.coords[index] = Rational::one();
        v
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Self {
            coords: values.iter().map(|&x| int(x)).collect(),
        }
    }

    /// Builds a vector from `(numerator, denominator)` pairs.
    pub fn from_fracs(values: &[(i64, i64)]) -> Self {
        Self {
            coords: values.iter().map(|&(p, q)| rat(p, q)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &Self) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(&other.coords)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|x| x.is_integer())
    }

    /// Least common multiple of the coordinate denominators.
    pub fn common_denominator(&self) -> BigInt {
        self.coords.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    /// Integer coordinates, or `None` if some coordinate is fractional or does
    /// not fit in an `i64`.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.coords
            .iter()
            .map(|x| if x.is_integer() { x.numer().to_i64() } else { None })
            .collect()
    }

    /// `self * denom` as machine integers. `denom` must clear every denominator.
    pub(crate) fn scaled_i64(&self, denom: &BigInt) -> Option<Vec<i64>> {
        let d = Rational::from_integer(denom.clone());
        self.coords
            .iter()
            .map(|x| {
                let y = x * &d;
                if y.is_integer() {
                    y.numer().to_i64()
                } else {
                    None
                }
            })
            .collect()
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: other.dim(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(self - other)
    }
}

impl Index<usize> for RationalVector {
    type Output = Rational;

    fn index(&self, i: usize) -> &Rational {
        &self.coords[i]
    }
}

impl<'a> Add<&'a RationalVector> for &'a RationalVector {
    type Output = RationalVector;

    fn add(self, rhs: &RationalVector) -> RationalVector {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        RationalVector {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a RationalVector> for &'a RationalVector {
    type Output = RationalVector;

    fn sub(self, rhs: &RationalVector) -> RationalVector {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        RationalVector {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Add for RationalVector {
    type Output = RationalVector;

    fn add(self, rhs: RationalVector) -> RationalVector {
        &self + &rhs
    }
}

impl Sub for RationalVector {
    type Output = RationalVector;

    fn sub(self, rhs: RationalVector) -> RationalVector {
        &self - &rhs
    }
}

impl AddAssign<&RationalVector> for RationalVector {
    fn add_assign(&mut self, rhs: &RationalVector) {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            *a += b;
        }
    }
}

impl Neg for &RationalVector {
    type Output = RationalVector;

    fn neg(self) -> RationalVector {
        RationalVector {
            coords: self.coords.iter().map(|x| -x).collect(),
        }
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(x))?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    /// Matrix whose rows are the given vectors.
    pub fn from_rows(rows: &[RationalVector]) -> Self {
        let cols = rows.first().map_or(0, RationalVector::dim);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.dim(), cols, "ragged rows");
            data.extend(r.coords().iter().cloned());
        }
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[RationalVector]) -> Self {
        Self::from_rows(cols).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> RationalVector {
        RationalVector::new(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn column(&self, j: usize) -> RationalVector {
        RationalVector::new((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &RationalVector) -> RationalVector {
        assert_eq!(self.cols, v.dim(), "dimension mismatch");
        RationalVector::new(
            (0..self.rows)
                .map(|i| (0..self.cols).fold(Rational::zero(), |acc, j| acc + self.get(i, j) * &v[j]))
                .collect(),
        )
    }

    pub fn determinant(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let (scaled, row_scale) = self.integer_rows();
        let (_, det, _) = bareiss(scaled, n, n);
        Rational::new(det, row_scale.iter().product())
    }

    /// Exact inverse, `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let (scaled, row_scale) = self.integer_rows();
        // [S A | S] is integral; eliminating it yields (S A)^{-1} S = A^{-1}.
        let mut aug = vec![vec![BigInt::zero(); 2 * n]; n];
        for i in 0..n {
            aug[i][..n].clone_from_slice(&scaled[i]);
            aug[i][n + i] = row_scale[i].clone();
        }
        let (reduced, det, perm_ok) = bareiss(aug, n, 2 * n);
        if det.is_zero() || !perm_ok {
            return None;
        }
        Some(back_substitute(&reduced, n, n))
    }

    /// Rows scaled to integer entries, with the per-row scale factors.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
        let mut out = Vec::with_capacity(self.rows);
        let mut scales = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let row = self.row(i);
            let d = row.common_denominator();
            let dr = Rational::from_integer(d.clone());
            out.push(row.coords().iter().map(|x| (x * &dr).to_integer()).collect());
            scales.push(d);
        }
        (out, scales)
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;

    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = RationalMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j) + a * rhs.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

/// Fraction-free (Bareiss) forward elimination on the leading `n` columns of
/// an integer matrix with `width` columns. Returns the upper-triangular
/// result, the determinant of the leading block (up to the sign of the row
/// swaps, which is folded in) and whether a full set of pivots was found.
fn bareiss(mut m: Vec<Vec<BigInt>>, n: usize, width: usize) -> (Vec<Vec<BigInt>>, BigInt, bool) {
    let mut prev = BigInt::one();
    let mut sign = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return (m, BigInt::zero(), false);
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..width {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                // Sylvester's identity makes this division exact.
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = if n == 0 {
        BigInt::one()
    } else {
        &m[n - 1][n - 1] * &sign
    };
    (m, det, true)
}

/// Solves the upper-triangular system left by [`bareiss`] for the `rhs`
/// augmented columns.
fn back_substitute(m: &[Vec<BigInt>], n: usize, rhs: usize) -> RationalMatrix {
    let mut x = RationalMatrix::zeros(n, rhs);
    for c in 0..rhs {
        for i in (0..n).rev() {
            let mut acc = Rational::from_integer(m[i][n + c].clone());
            for j in i + 1..n {
                acc -= Rational::from_integer(m[i][j].clone()) * x.get(j, c);
            }
            x.set(i, c, acc / Rational::from_integer(m[i][i].clone()));
        }
    }
    x
}

/// Coordinates of `w` in the simple-root basis.
///
/// Fails with [`Error::NotInRootSpan`] when `w` has a component orthogonal to
/// the root span (possible for A_r, G2, E6 and E7, whose ambient spaces are
/// larger than the rank).
pub fn to_simple_root_coords(w: &RationalVector, rs: &RootSystem) -> Result<RationalVector> {
    if w.dim() != rs.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: rs.ambient_dim(),
            actual: w.dim(),
        });
    }
    let c = rs.root_coordinate_matrix().mul_vec(w);
    if &rs.simple_root_matrix().mul_vec(&c) != w {
        return Err(Error::NotInRootSpan(w.to_string()));
    }
    Ok(c)
}

/// Coordinates of `w` in the fundamental-weight basis: m_i = ⟨w, α_i^∨⟩.
pub fn to_fundamental_coords(w: &RationalVector, rs: &RootSystem) -> Result<RationalVector> {
    // Span check goes through the root-coordinate solve.
    to_simple_root_coords(w, rs)?;
    Ok(RationalVector::new(
        rs.simple_roots().iter().map(|a| int(2) * w.dot(a) / a.dot(a)).collect(),
    ))
}

/// Ambient vector Σ c_i α_i.
pub fn from_simple_root_coords(c: &RationalVector, rs: &RootSystem) -> RationalVector {
    rs.simple_root_matrix().mul_vec(c)
}

/// Ambient vector Σ m_i ϖ_i.
pub fn from_fundamental_coords(m: &RationalVector, rs: &RootSystem) -> RationalVector {
    rs.fundamental_weight_matrix().mul_vec(m)
}

/// `true` when every coordinate is a non-negative integer.
pub fn is_nonnegative_integral(v: &RationalVector) -> bool {
    v.coords().iter().all(|x| x.is_integer() && !x.is_negative())
}
