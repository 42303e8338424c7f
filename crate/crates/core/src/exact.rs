//! Exact rational scalars, vectors, and dense matrices.
//!
//! Every routine here is arbitrary-precision over `BigRational`, so
//! elimination, inverses, and congruence reductions produce exact results
//! and downstream equality checks are meaningful. Nothing in this module
//! touches floating point.

use num_bigint::BigInt;
use num_integer::Integer;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Index, IndexMut};
use thiserror::Error;

/// Exact scalar used throughout the crate. Always stored in lowest terms.
pub type Rational = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational `p/q`. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Exact conversion of a finite `f64` into its binary-expansion rational.
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    BigRational::from_float(x)
}

/// Nearest `f64` to an exact rational.
pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Out-of-range ratios still have a well-defined sign.
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `p/q`, plain integers, and exact decimal strings (`-2.75` -> -11/4).
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let invalid = || ParseRationalError::Invalid(s.to_string());
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| invalid())?;
        let d: BigInt = den.trim().parse().map_err(|_| invalid())?;
        if d.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(s.to_string()));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let negative = int_part.trim_start().starts_with('-');
        let int_digits = if int_part.is_empty() || int_part == "-" || int_part == "+" {
            BigInt::zero()
        } else {
            int_part.parse().map_err(|_| invalid())?
        };
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(invalid());
        }
        let frac: BigInt = frac_part.parse().map_err(|_| invalid())?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let magnitude = int_digits.abs() * &scale + frac;
        let signed = if negative { -magnitude } else { magnitude };
        return Ok(BigRational::new(signed, scale));
    }
    let n: BigInt = s.parse().map_err(|_| invalid())?;
    Ok(BigRational::from_integer(n))
}

/// Renders a rational as `p` or `p/q` (the form `parse_rational` accepts).
pub fn rational_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact square root of a nonnegative rational, if one exists.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let num = r.numer();
    let den = r.denom();
    let sn = num.sqrt();
    let sd = den.sqrt();
    if &(&sn * &sn) == num && &(&sd * &sd) == den {
        Some(BigRational::new(sn, sd))
    } else {
        None
    }
}

/// Dense exact vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vector {
    entries: Vec<Rational>,
}

impl Vector {
    pub fn new(entries: Vec<Rational>) -> Self {
        Vector { entries }
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        Vector::new(entries.iter().map(|&n| rat(n)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Vector::new(vec![Rational::zero(); dim])
    }

    /// Standard basis vector `e_i`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Vector::zeros(dim);
        v[i] = Rational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.entries.iter()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn scale(&self, c: &Rational) -> Vector {
        Vector::new(self.entries.iter().map(|e| e * c).collect())
    }

    pub fn add(&self, other: &Vector) -> Vector {
        assert_eq!(self.dim(), other.dim(), "vector dimension mismatch");
        Vector::new(
            self.entries
                .iter()
                .zip(other.entries.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        assert_eq!(self.dim(), other.dim(), "vector dimension mismatch");
        Vector::new(
            self.entries
                .iter()
                .zip(other.entries.iter())
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    /// Clears denominators and divides out content, preserving direction.
    pub fn primitive(&self) -> Vector {
        if self.is_zero() {
            return self.clone();
        }
        let mut lcm = BigInt::one();
        for e in &self.entries {
            lcm = lcm.lcm(e.denom());
        }
        let ints: Vec<BigInt> = self
            .entries
            .iter()
            .map(|e| e.numer() * (&lcm / e.denom()))
            .collect();
        let mut gcd = BigInt::zero();
        for n in &ints {
            gcd = gcd.gcd(n);
        }
        Vector::new(
            ints.into_iter()
                .map(|n| BigRational::from_integer(n / &gcd))
                .collect(),
        )
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(rational_to_f64).collect()
    }
}

impl Index<usize> for Vector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.entries[i]
    }
}

impl IndexMut<usize> for Vector {
    fn index_mut(&mut self, i: usize) -> &mut Rational {
        &mut self.entries[i]
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", rational_to_string(e))?;
        }
        write!(f, ")")
    }
}

/// Dense exact matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|r| r.len() == ncols),
            "ragged rows in matrix literal"
        );
        Matrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| rat(n)).collect())
                .collect(),
        )
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Assembles `[[a, b], [c, d]]` from equally sized square blocks.
    pub fn from_blocks(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Self {
        let n = a.rows;
        assert!(
            [a, b, c, d]
                .iter()
                .all(|m| m.rows == n && m.cols == n),
            "blocks must be square and equally sized"
        );
        Matrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
            (true, true) => a[(i, j)].clone(),
            (true, false) => b[(i, j - n)].clone(),
            (false, true) => c[(i - n, j)].clone(),
            (false, false) => d[(i - n, j - n)].clone(),
        })
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

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..=i).all(|j| self[(i, j)] == -self[(j, i)].clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn row(&self, i: usize) -> Vector {
        Vector::new((0..self.cols).map(|j| self[(i, j)].clone()).collect())
    }

    pub fn col(&self, j: usize) -> Vector {
        Vector::new((0..self.rows).map(|i| self[(i, j)].clone()).collect())
    }

    pub fn block(&self, r0: usize, c0: usize, nrows: usize, ncols: usize) -> Matrix {
        assert!(r0 + nrows <= self.rows && c0 + ncols <= self.cols);
        Matrix::from_fn(nrows, ncols, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &other[(i, j)])
    }

    pub fn neg(&self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| -self[(i, j)].clone())
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * c)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let term = a * &other[(k, j)];
                    out[(i, j)] = &out[(i, j)] + &term;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &Vector) -> Vector {
        assert_eq!(self.cols, v.dim(), "matrix/vector dimension mismatch");
        Vector::new(
            (0..self.rows)
                .map(|i| {
                    (0..self.cols)
                        .map(|j| &self[(i, j)] * &v[j])
                        .fold(Rational::zero(), |acc, t| acc + t)
                })
                .collect(),
        )
    }

    /// `v^T (self) w`.
    pub fn bilinear(&self, v: &Vector, w: &Vector) -> Rational {
        assert_eq!(self.rows, v.dim());
        assert_eq!(self.cols, w.dim());
        let mut acc = Rational::zero();
        for i in 0..self.rows {
            if v[i].is_zero() {
                continue;
            }
            for j in 0..self.cols {
                if self[(i, j)].is_zero() || w[j].is_zero() {
                    continue;
                }
                acc += &v[i] * &self[(i, j)] * &w[j];
            }
        }
        acc
    }

    /// Congruence transform `m^T (self) m`.
    pub fn congruence(&self, m: &Matrix) -> Matrix {
        m.transpose().mul(self).mul(m)
    }

    pub fn trace(&self) -> Rational {
        assert!(self.is_square());
        (0..self.rows).fold(Rational::zero(), |acc, i| acc + &self[(i, i)])
    }

    pub fn det(&self) -> Rational {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rational::one();
        for k in 0..n {
            let pivot_row = match (k..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(r) => r,
                None => return Rational::zero(),
            };
            if pivot_row != k {
                a.swap_rows(pivot_row, k);
                det = -det;
            }
            let pivot = a[(k, k)].clone();
            det *= &pivot;
            for i in (k + 1)..n {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let f = &a[(i, k)] / &pivot;
                for j in k..n {
                    let t = &f * &a[(k, j)];
                    a[(i, j)] = &a[(i, j)] - &t;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square(), "inverse of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for k in 0..n {
            let pivot_row = (k..n).find(|&i| !a[(i, k)].is_zero())?;
            if pivot_row != k {
                a.swap_rows(pivot_row, k);
                inv.swap_rows(pivot_row, k);
            }
            let pivot = a[(k, k)].clone();
            for j in 0..n {
                a[(k, j)] = &a[(k, j)] / &pivot;
                inv[(k, j)] = &inv[(k, j)] / &pivot;
            }
            for i in 0..n {
                if i == k || a[(i, k)].is_zero() {
                    continue;
                }
                let f = a[(i, k)].clone();
                for j in 0..n {
                    let ta = &f * &a[(k, j)];
                    a[(i, j)] = &a[(i, j)] - &ta;
                    let ti = &f * &inv[(k, j)];
                    inv[(i, j)] = &inv[(i, j)] - &ti;
                }
            }
        }
        Some(inv)
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(pr) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(pr, r);
            let pivot = a[(r, c)].clone();
            for j in c..a.cols {
                a[(r, j)] = &a[(r, j)] / &pivot;
            }
            for i in 0..a.rows {
                if i == r || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in c..a.cols {
                    let t = &f * &a[(r, j)];
                    a[(i, j)] = &a[(i, j)] - &t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{v : self v = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = Vector::zeros(self.cols);
            v[free] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[(row, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `self x = rhs`, if the system is consistent.
    pub fn solve(&self, rhs: &Vector) -> Option<Vector> {
        assert_eq!(self.rows, rhs.dim());
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = rhs[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut x = Vector::zeros(self.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r[(row, self.cols)].clone();
        }
        Some(x)
    }

    /// Inertia `(positive, negative, zero)` of a symmetric matrix, computed
    /// by exact symmetric congruence reduction (Sylvester's law).
    pub fn inertia(&self) -> (usize, usize, usize) {
        assert!(self.is_symmetric(), "inertia requires a symmetric matrix");
        let n = self.rows;
        let mut a = self.clone();
        let (mut pos, mut neg, mut zero) = (0, 0, 0);
        for k in 0..n {
            if a[(k, k)].is_zero() {
                if let Some(j) = ((k + 1)..n).find(|&j| !a[(j, j)].is_zero()) {
                    a.swap_rows(k, j);
                    a.swap_cols(k, j);
                } else if let Some(j) = ((k + 1)..n).find(|&j| !a[(k, j)].is_zero()) {
                    // Both diagonal entries vanish; e_k += e_j makes the
                    // new diagonal entry 2*a_kj != 0.
                    a.add_row(k, j);
                    a.add_col(k, j);
                } else {
                    zero += 1;
                    continue;
                }
            }
            let pivot = a[(k, k)].clone();
            if pivot.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            for i in (k + 1)..n {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let f = &a[(i, k)] / &pivot;
                for j in k..n {
                    let t = &f * &a[(k, j)];
                    a[(i, j)] = &a[(i, j)] - &t;
                }
                for j in k..n {
                    let t = &f * &a[(j, k)];
                    a[(j, i)] = &a[(j, i)] - &t;
                }
            }
        }
        (pos, neg, zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn add_row(&mut self, dst: usize, src: usize) {
        for j in 0..self.cols {
            let t = &self[(dst, j)] + &self[(src, j)];
            self[(dst, j)] = t;
        }
    }

    fn add_col(&mut self, dst: usize, src: usize) {
        for i in 0..self.rows {
            let t = &self[(i, dst)] + &self[(i, src)];
            self[(i, dst)] = t;
        }
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| rational_to_f64(&self[(i, j)])).collect())
            .collect()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", rational_to_string(&self[(i, j)]))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Rank of the span of a set of vectors.
pub fn span_rank(vectors: &[Vector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors.iter().map(|v| v.entries.clone()).collect()).rank()
}

/// Reduces a spanning set to a linearly independent subset (order kept).
pub fn independent_subset(vectors: &[Vector]) -> Vec<Vector> {
    let mut kept: Vec<Vector> = Vec::new();
    for v in vectors {
        if v.is_zero() {
            continue;
        }
        let mut candidate = kept.clone();
        candidate.push(v.clone());
        if span_rank(&candidate) > kept.len() {
            kept.push(v.clone());
        }
    }
    kept
}

/// True if `v` lies in the span of `basis`.
pub fn in_span(basis: &[Vector], v: &Vector) -> bool {
    if v.is_zero() {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    let mut with = basis.to_vec();
    with.push(v.clone());
    span_rank(&with) == basis.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render_rationals() {
        assert_eq!(parse_rational("3/4").unwrap(), ratio(3, 4));
        assert_eq!(parse_rational("-6/8").unwrap(), ratio(-3, 4));
        assert_eq!(parse_rational("5").unwrap(), rat(5));
        assert_eq!(parse_rational("-2.75").unwrap(), ratio(-11, 4));
        assert_eq!(parse_rational("0.1").unwrap(), ratio(1, 10));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
        assert_eq!(rational_to_string(&ratio(3, 4)), "3/4");
        assert_eq!(rational_to_string(&rat(-7)), "-7");
    }

    #[test]
    fn f64_round_trip_is_exact() {
        for x in [0.5, -1.25, 3.0, 0.1] {
            let r = rational_from_f64(x).unwrap();
            assert_eq!(rational_to_f64(&r), x);
        }
    }

    #[test]
    fn sqrt_detects_perfect_squares() {
        assert_eq!(rational_sqrt(&ratio(9, 4)).unwrap(), ratio(3, 2));
        assert_eq!(rational_sqrt(&rat(0)).unwrap(), rat(0));
        assert!(rational_sqrt(&rat(2)).is_none());
        assert!(rational_sqrt(&rat(-4)).is_none());
        assert!(rational_sqrt(&ratio(4, 3)).is_none());
    }

    #[test]
    fn determinant_and_inverse() {
        let m = Matrix::from_i64(&[&[1, 2], &[3, 7]]);
        assert_eq!(m.det(), rat(1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));

        let singular = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(singular.det(), rat(0));
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn kernel_and_solve() {
        let m = Matrix::from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        let kernel = m.kernel_basis();
        assert_eq!(kernel.len(), 2);
        for v in &kernel {
            assert!(m.mul_vec(v).is_zero());
        }
        let rhs = Vector::from_i64(&[6, 12]);
        let x = m.solve(&rhs).unwrap();
        assert_eq!(m.mul_vec(&x), rhs);
        assert!(m.solve(&Vector::from_i64(&[1, 0])).is_none());
    }

    #[test]
    fn inertia_counts_signs() {
        assert_eq!(Matrix::identity(3).inertia(), (3, 0, 0));
        let eta = Matrix::from_i64(&[&[-1, 0], &[0, 1]]);
        assert_eq!(eta.inertia(), (1, 1, 0));
        // Zero diagonal forces the off-diagonal congruence step.
        let s = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(s.inertia(), (1, 1, 0));
        let degenerate = Matrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert_eq!(degenerate.inertia(), (1, 0, 1));
    }

    #[test]
    fn inertia_is_congruence_invariant() {
        let s = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        let m = Matrix::from_i64(&[&[2, 1], &[5, 3]]);
        assert_eq!(s.congruence(&m).inertia(), s.inertia());
    }

    #[test]
    fn span_utilities() {
        let vs = vec![
            Vector::from_i64(&[1, 0, 0]),
            Vector::from_i64(&[2, 0, 0]),
            Vector::from_i64(&[0, 1, 0]),
        ];
        assert_eq!(span_rank(&vs), 2);
        let indep = independent_subset(&vs);
        assert_eq!(indep.len(), 2);
        assert!(in_span(&indep, &Vector::from_i64(&[5, 3, 0])));
        assert!(!in_span(&indep, &Vector::from_i64(&[0, 0, 1])));
    }

    #[test]
    fn primitive_clears_denominators() {
        let v = Vector::new(vec![ratio(1, 2), ratio(-3, 4), rat(0)]);
        assert_eq!(v.primitive(), Vector::from_i64(&[2, -3, 0]));
    }
}
