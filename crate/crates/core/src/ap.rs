//! The s-plectic group Ap(n) and its Lie algebra.
//!
//! A matrix `D` belongs to Ap(n) when it preserves the standard s-form:
//! `D^T s D = s`. Writing `D = [[P, Q], [R, S]]` in n x n blocks, this is
//! equivalent to the four block conditions
//!
//! ```text
//! R^T P = -P^T R        R^T Q + P^T S = I
//! S^T Q = -Q^T S        S^T P + Q^T R = I
//! ```
//!
//! Membership and block checks are exact. The Lie algebra counterpart is
//! `X^T s + s X = 0`, equivalently `X = [[A, B], [C, -A^T]]` with `B`, `C`
//! antisymmetric; exponentiating algebra elements (floating point, with an
//! explicit residual contract) generates members beyond the two exact
//! block families.

use crate::exact::{Matrix, Rational, Vector};
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ApError {
    #[error("matrix must be {expected}x{expected}, got {rows}x{cols}")]
    WrongShape {
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error("matrix does not satisfy D^T s D = s")]
    NotAMember,
    #[error("matrix does not satisfy X^T s + s X = 0")]
    NotAlgebraElement,
    #[error("parameter must be nonzero")]
    ZeroParameter,
    #[error("block must be invertible")]
    SingularBlock,
    #[error("exponential residual {residual:e} exceeds tolerance {tolerance:e}")]
    ToleranceExceeded { residual: f64, tolerance: f64 },
}

fn check_shape(m: &Matrix, n: usize) -> Result<(), ApError> {
    if n == 0 || m.rows() != 2 * n || m.cols() != 2 * n {
        return Err(ApError::WrongShape {
            expected: 2 * n,
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(())
}

/// Exact membership test `D^T s D = s` against the standard s-form.
pub fn is_ap_member(d: &Matrix, n: usize) -> Result<bool, ApError> {
    check_shape(d, n)?;
    let s = crate::sform::standard_sform(n);
    Ok(&s.matrix().congruence(d) == s.matrix())
}

/// Outcome of the four block conditions. Their conjunction is exactly
/// equivalent to membership.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct BlockConditions {
    /// `R^T P = -P^T R`
    pub rp_antisymmetric: bool,
    /// `R^T Q + P^T S = I`
    pub rq_ps_identity: bool,
    /// `S^T Q = -Q^T S`
    pub sq_antisymmetric: bool,
    /// `S^T P + Q^T R = I`
    pub sp_qr_identity: bool,
}

impl BlockConditions {
    pub fn all_hold(&self) -> bool {
        self.rp_antisymmetric && self.rq_ps_identity && self.sq_antisymmetric && self.sp_qr_identity
    }
}

pub fn check_block_conditions(d: &Matrix, n: usize) -> Result<BlockConditions, ApError> {
    check_shape(d, n)?;
    let p = d.block(0, 0, n, n);
    let q = d.block(0, n, n, n);
    let r = d.block(n, 0, n, n);
    let s = d.block(n, n, n, n);
    let id = Matrix::identity(n);
    Ok(BlockConditions {
        rp_antisymmetric: r.transpose().mul(&p) == p.transpose().mul(&r).neg(),
        rq_ps_identity: r.transpose().mul(&q).add(&p.transpose().mul(&s)) == id,
        sq_antisymmetric: s.transpose().mul(&q) == q.transpose().mul(&s).neg(),
        sp_qr_identity: s.transpose().mul(&p).add(&q.transpose().mul(&r)) == id,
    })
}

/// A verified element of Ap(n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    matrix: Matrix,
    n: usize,
}

impl GroupElement {
    pub fn new(matrix: Matrix) -> Result<Self, ApError> {
        let dim = matrix.rows();
        if dim == 0 || !dim.is_multiple_of(2) {
            return Err(ApError::WrongShape {
                expected: dim.max(2),
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let n = dim / 2;
        if !is_ap_member(&matrix, n)? {
            return Err(ApError::NotAMember);
        }
        Ok(GroupElement { matrix, n })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn det(&self) -> Rational {
        self.matrix.det()
    }

    pub fn block_p(&self) -> Matrix {
        self.matrix.block(0, 0, self.n, self.n)
    }

    pub fn block_q(&self) -> Matrix {
        self.matrix.block(0, self.n, self.n, self.n)
    }

    pub fn block_r(&self) -> Matrix {
        self.matrix.block(self.n, 0, self.n, self.n)
    }

    pub fn block_s(&self) -> Matrix {
        self.matrix.block(self.n, self.n, self.n, self.n)
    }

    /// Group product; closure is guaranteed, so no re-validation is needed.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        assert_eq!(self.n, other.n);
        GroupElement {
            matrix: self.matrix.mul(&other.matrix),
            n: self.n,
        }
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            matrix: self
                .matrix
                .inverse()
                .expect("group elements are invertible"),
            n: self.n,
        }
    }
}

/// The antidiagonal Ap(1) generator `[[0, q], [q^-1, 0]]`; det = -1.
pub fn ap1_generator_a(q: &Rational) -> Result<GroupElement, ApError> {
    if q.is_zero() {
        return Err(ApError::ZeroParameter);
    }
    let mut m = Matrix::zeros(2, 2);
    m[(0, 1)] = q.clone();
    m[(1, 0)] = Rational::one() / q;
    Ok(GroupElement { matrix: m, n: 1 })
}

/// The diagonal Ap(1) generator `[[p, 0], [0, p^-1]]`; det = 1.
pub fn ap1_generator_b(p: &Rational) -> Result<GroupElement, ApError> {
    if p.is_zero() {
        return Err(ApError::ZeroParameter);
    }
    let mut m = Matrix::zeros(2, 2);
    m[(0, 0)] = p.clone();
    m[(1, 1)] = Rational::one() / p;
    Ok(GroupElement { matrix: m, n: 1 })
}

/// Block-diagonal family `[[M, 0], [0, M^-T]]`, the n-dimensional
/// generalization of the diagonal Ap(1) generator.
pub fn diag_family(m: &Matrix) -> Result<GroupElement, ApError> {
    assert!(m.is_square(), "diag_family takes a square block");
    let n = m.rows();
    let inv_t = m.inverse().ok_or(ApError::SingularBlock)?.transpose();
    let z = Matrix::zeros(n, n);
    Ok(GroupElement {
        matrix: Matrix::from_blocks(m, &z, &z, &inv_t),
        n,
    })
}

/// Block-antidiagonal family `[[0, Q], [Q^-T, 0]]`, generalizing the
/// antidiagonal Ap(1) generator.
pub fn antidiag_family(q: &Matrix) -> Result<GroupElement, ApError> {
    assert!(q.is_square(), "antidiag_family takes a square block");
    let n = q.rows();
    let inv_t = q.inverse().ok_or(ApError::SingularBlock)?.transpose();
    let z = Matrix::zeros(n, n);
    Ok(GroupElement {
        matrix: Matrix::from_blocks(&z, q, &inv_t, &z),
        n,
    })
}

/// Exact check of the linearized invariance condition `X^T s + s X = 0`.
pub fn is_algebra_element(x: &Matrix, n: usize) -> Result<bool, ApError> {
    check_shape(x, n)?;
    let s = crate::sform::standard_sform(n);
    let lhs = x.transpose().mul(s.matrix()).add(&s.matrix().mul(x));
    Ok(lhs.is_zero())
}

/// A verified element of the Lie algebra of Ap(n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    matrix: Matrix,
    n: usize,
}

impl AlgebraElement {
    pub fn new(matrix: Matrix) -> Result<Self, ApError> {
        let dim = matrix.rows();
        if dim == 0 || !dim.is_multiple_of(2) {
            return Err(ApError::WrongShape {
                expected: dim.max(2),
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let n = dim / 2;
        if !is_algebra_element(&matrix, n)? {
            return Err(ApError::NotAlgebraElement);
        }
        Ok(AlgebraElement { matrix, n })
    }

    /// Builds `[[A, B], [C, -A^T]]`; `B` and `C` must be antisymmetric.
    pub fn from_blocks(a: &Matrix, b: &Matrix, c: &Matrix) -> Result<Self, ApError> {
        let n = a.rows();
        if !b.is_antisymmetric() || !c.is_antisymmetric() {
            return Err(ApError::NotAlgebraElement);
        }
        let d = a.transpose().neg();
        Ok(AlgebraElement {
            matrix: Matrix::from_blocks(a, b, c, &d),
            n,
        })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// Floating-point image of an algebra element under the matrix
/// exponential, with the achieved invariance residual.
#[derive(Clone, Debug)]
pub struct ApproxGroupElement {
    pub matrix: Vec<Vec<f64>>,
    pub residual: f64,
}

/// Matrix exponential by scaling and squaring, checked against the group
/// condition: fails if `max |exp(X)^T s exp(X) - s|` exceeds `tolerance`.
pub fn exp_into_group(x: &AlgebraElement, tolerance: f64) -> Result<ApproxGroupElement, ApError> {
    let xf = x.matrix().to_f64();
    let ef = mat_exp(&xf);
    let n = x.n();
    let s = crate::sform::standard_sform(n).matrix().to_f64();
    let prod = fmul(&fmul(&ftranspose(&ef), &s), &ef);
    let mut residual: f64 = 0.0;
    for i in 0..2 * n {
        for j in 0..2 * n {
            residual = residual.max((prod[i][j] - s[i][j]).abs());
        }
    }
    if residual > tolerance {
        return Err(ApError::ToleranceExceeded {
            residual,
            tolerance,
        });
    }
    Ok(ApproxGroupElement {
        matrix: ef,
        residual,
    })
}

// Small dense f64 helpers; the matrices here are at most 6x6.

fn fmul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let mut out = vec![vec![0.0; m]; n];
    for i in 0..n {
        for l in 0..k {
            let v = a[i][l];
            if v == 0.0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += v * b[l][j];
            }
        }
    }
    out
}

fn ftranspose(a: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let m = a[0].len();
    let mut out = vec![vec![0.0; n]; m];
    for i in 0..n {
        for j in 0..m {
            out[j][i] = a[i][j];
        }
    }
    out
}

fn fidentity(n: usize) -> Vec<Vec<f64>> {
    let mut out = vec![vec![0.0; n]; n];
    for (i, row) in out.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    out
}

fn mat_exp(a: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let norm: f64 = a
        .iter()
        .map(|row| row.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let squarings = if norm > 0.25 {
        (norm / 0.25).log2().ceil() as u32
    } else {
        0
    };
    let scale = 2f64.powi(-(squarings as i32));
    let scaled: Vec<Vec<f64>> = a
        .iter()
        .map(|row| row.iter().map(|v| v * scale).collect())
        .collect();

    // Taylor series; with the scaled norm below 1/4, twenty terms are far
    // beyond double precision.
    let mut result = fidentity(n);
    let mut term = fidentity(n);
    for k in 1..=20 {
        term = fmul(&term, &scaled);
        let inv_k = 1.0 / k as f64;
        for row in term.iter_mut() {
            for v in row.iter_mut() {
                *v *= inv_k;
            }
        }
        for i in 0..n {
            for j in 0..n {
                result[i][j] += term[i][j];
            }
        }
    }
    for _ in 0..squarings {
        result = fmul(&result, &result);
    }
    result
}

/// Conjugates `o` by `t`: `t^-1 o t`. Useful for transporting isometries
/// of one form into automorphisms of another along a change of basis.
pub fn conjugate(t: &Matrix, o: &Matrix) -> Matrix {
    t.inverse()
        .expect("conjugating matrix must be invertible")
        .mul(o)
        .mul(t)
}

/// Columns assembled into a matrix, for feeding `standardize` output into
/// matrix-level checks.
pub fn columns_to_matrix(cols: &[Vector]) -> Matrix {
    let dim = cols[0].dim();
    Matrix::from_fn(dim, cols.len(), |i, j| cols[j][i].clone())
}
