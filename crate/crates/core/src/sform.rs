//! Strictly traceless symmetric bilinear forms and their subspace geometry.
//!
//! An s-form on a 2n-dimensional rational space is a symmetric,
//! nondegenerate form admitting a basis of null vectors (equivalently: all
//! principal block traces of its Gram matrix vanish in that basis). The
//! standard model is the block matrix `[[0, I], [I, 0]]`. This module
//! provides evaluation, admissibility checks, signatures, orthogonal
//! complements, the isotropic/coisotropic/Lagrangian taxonomy, and exact
//! standardization of any form rationally equivalent to the standard one.
//!
//! Standardization extracts hyperbolic pairs: find a null vector `u`, a
//! partner `w` with `s(u, w) = 1`, correct `w` to a null partner
//! `w - (s(w,w)/2) u`, and recurse on the orthogonal complement of the
//! pair. The null-vector search is layered: basis and pair scans with an
//! exact square-discriminant test, then a lattice reduction of the
//! integer-scaled Gram matrix in the style of indefinite LLL. Forms of
//! split signature that still admit no rational null vector (they exist:
//! `diag(1, -2)` has signature (1,1) but `x^2 = 2y^2` has no rational
//! solutions) are reported with a dedicated error.

use crate::exact::{in_span, independent_subset, rat, span_rank, Matrix, Rational, Vector};
use crate::isotropy::isotropic_vector;
use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SformError {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("form dimension must be even and positive, got {0}")]
    OddDimension(usize),
    #[error("form matrix must be symmetric")]
    NotSymmetric,
    #[error("form is degenerate (zero determinant)")]
    Degenerate,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("signature ({positive},{negative}) is not split: not an s-space")]
    SignatureNotSplit { positive: usize, negative: usize },
    #[error("no rational null vector found: form is not rationally equivalent to the standard s-form")]
    NoRationalNullVector,
    #[error("basis is not s-admissible for this form")]
    NotAdmissible,
}

/// A symmetric, nondegenerate bilinear form on a 2n-dimensional space.
#[derive(Clone, PartialEq, Eq)]
pub struct BilinearForm {
    matrix: Matrix,
}

impl BilinearForm {
    pub fn new(matrix: Matrix) -> Result<Self, SformError> {
        if !matrix.is_square() {
            return Err(SformError::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let dim = matrix.rows();
        if dim == 0 || !dim.is_multiple_of(2) {
            return Err(SformError::OddDimension(dim));
        }
        if !matrix.is_symmetric() {
            return Err(SformError::NotSymmetric);
        }
        if matrix.det().is_zero() {
            return Err(SformError::Degenerate);
        }
        Ok(BilinearForm { matrix })
    }

    /// The standard s-form `[[0, I_n], [I_n, 0]]`. Its square is the
    /// identity and all principal block traces vanish.
    pub fn standard(n: usize) -> Self {
        assert!(n >= 1, "standard s-form needs n >= 1");
        let z = Matrix::zeros(n, n);
        let id = Matrix::identity(n);
        BilinearForm {
            matrix: Matrix::from_blocks(&z, &id, &id, &z),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn half_dim(&self) -> usize {
        self.dim() / 2
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `v^T s w`, symmetric in its arguments.
    pub fn evaluate(&self, v: &Vector, w: &Vector) -> Result<Rational, SformError> {
        let dim = self.dim();
        for arg in [v, w] {
            if arg.dim() != dim {
                return Err(SformError::DimensionMismatch {
                    expected: dim,
                    got: arg.dim(),
                });
            }
        }
        Ok(self.matrix.bilinear(v, w))
    }
}

impl fmt::Debug for BilinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BilinearForm {:?}", self.matrix)
    }
}

/// The standard s-form as a free function, matching the matrix of
/// [`BilinearForm::standard`].
pub fn standard_sform(n: usize) -> BilinearForm {
    BilinearForm::standard(n)
}

/// Permanent of the 2x2 matrix with columns `v`, `w`: `v1 w2 + v2 w1`.
/// Realizes the standard n=1 s-form on column pairs.
pub fn permanent2(v: &Vector, w: &Vector) -> Result<Rational, SformError> {
    for arg in [v, w] {
        if arg.dim() != 2 {
            return Err(SformError::DimensionMismatch {
                expected: 2,
                got: arg.dim(),
            });
        }
    }
    Ok(&v[0] * &w[1] + &v[1] * &w[0])
}

/// True iff the vectors are independent and every one is null, i.e.
/// `s(e_i, e_i) = 0` for all i.
pub fn is_admissible_basis(form: &BilinearForm, basis: &[Vector]) -> Result<bool, SformError> {
    let dim = form.dim();
    if basis.len() != dim {
        return Err(SformError::DimensionMismatch {
            expected: dim,
            got: basis.len(),
        });
    }
    for b in basis {
        if b.dim() != dim {
            return Err(SformError::DimensionMismatch {
                expected: dim,
                got: b.dim(),
            });
        }
    }
    if span_rank(basis) != dim {
        return Ok(false);
    }
    Ok(basis
        .iter()
        .all(|b| form.matrix.bilinear(b, b).is_zero()))
}

/// Traces of the leading principal k x k blocks, k = 1..=dim. All vanish
/// exactly when every diagonal entry vanishes.
pub fn block_traces(form: &BilinearForm) -> Vec<Rational> {
    let m = form.matrix();
    let mut acc = Rational::zero();
    (0..form.dim())
        .map(|k| {
            acc += &m[(k, k)];
            acc.clone()
        })
        .collect()
}

/// Counts of positive and negative eigenvalues, computed exactly by
/// symmetric congruence reduction. The form is nondegenerate by
/// construction, so there is no zero count.
pub fn signature(form: &BilinearForm) -> (usize, usize) {
    let (pos, neg, zero) = form.matrix.inertia();
    debug_assert_eq!(zero, 0);
    (pos, neg)
}

/// True iff `phi^T form_b phi = form_a` exactly, i.e. `phi` pulls the
/// second form back to the first.
pub fn verify_isometry(
    phi: &Matrix,
    form_a: &BilinearForm,
    form_b: &BilinearForm,
) -> Result<bool, SformError> {
    if !phi.is_square() {
        return Err(SformError::NotSquare {
            rows: phi.rows(),
            cols: phi.cols(),
        });
    }
    if phi.rows() != form_a.dim() || form_a.dim() != form_b.dim() {
        return Err(SformError::DimensionMismatch {
            expected: form_a.dim(),
            got: phi.rows(),
        });
    }
    Ok(form_b.matrix.congruence(phi) == form_a.matrix)
}

/// A subspace of a fixed ambient space, stored as an independent spanning set.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn new(ambient_dim: usize, spanning: Vec<Vector>) -> Result<Self, SformError> {
        for v in &spanning {
            if v.dim() != ambient_dim {
                return Err(SformError::DimensionMismatch {
                    expected: ambient_dim,
                    got: v.dim(),
                });
            }
        }
        Ok(Subspace {
            ambient_dim,
            basis: independent_subset(&spanning),
        })
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: (0..ambient_dim)
                .map(|i| Vector::unit(ambient_dim, i))
                .collect(),
        }
    }

    pub fn trivial(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn contains(&self, v: &Vector) -> bool {
        v.dim() == self.ambient_dim && in_span(&self.basis, v)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    pub fn intersection_dim(&self, other: &Subspace) -> usize {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        self.dim() + other.dim() - span_rank(&all)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} of {}) {:?}", self.dim(), self.ambient_dim, self.basis)
    }
}

/// Orthogonal complement `W^perp = {v : s(w, v) = 0 for all w in W}`,
/// computed as the exact kernel of the pairing map. For nondegenerate
/// forms `dim W + dim W^perp` equals the ambient dimension.
pub fn orthogonal_complement(form: &BilinearForm, w: &Subspace) -> Subspace {
    assert_eq!(form.dim(), w.ambient_dim(), "ambient dimension mismatch");
    if w.dim() == 0 {
        return Subspace::full(form.dim());
    }
    // Row j of the constraint matrix is (s w_j)^T.
    let rows: Vec<Vec<Rational>> = w
        .basis()
        .iter()
        .map(|wj| form.matrix.mul_vec(wj).entries().to_vec())
        .collect();
    let constraints = Matrix::from_rows(rows);
    Subspace {
        ambient_dim: form.dim(),
        basis: constraints.kernel_basis(),
    }
}

/// Subspace taxonomy relative to an s-form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubspaceClass {
    /// `W` strictly contained in `W^perp`.
    Isotropic,
    /// `W^perp` strictly contained in `W`.
    Coisotropic,
    /// `W = W^perp`.
    Lagrangian,
    /// `W` proper, nonzero, and meets `W^perp` trivially.
    SymplecticLike,
    /// Partial overlap: none of the above.
    None,
}

impl SubspaceClass {
    pub fn label(&self) -> &'static str {
        match self {
            SubspaceClass::Isotropic => "isotropic",
            SubspaceClass::Coisotropic => "coisotropic",
            SubspaceClass::Lagrangian => "lagrangian",
            SubspaceClass::SymplecticLike => "symplectic-like",
            SubspaceClass::None => "none",
        }
    }
}

impl fmt::Display for SubspaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Classifies `W` against its orthogonal complement. Total: subspaces the
/// isotropic/coisotropic/Lagrangian trichotomy does not cover land in
/// `SymplecticLike` (trivial intersection) or `None` (partial overlap).
pub fn classify_subspace(form: &BilinearForm, w: &Subspace) -> SubspaceClass {
    let comp = orthogonal_complement(form, w);
    let w_in_comp = w.is_subspace_of(&comp);
    let comp_in_w = comp.is_subspace_of(w);
    match (w_in_comp, comp_in_w) {
        (true, true) => SubspaceClass::Lagrangian,
        (true, false) => SubspaceClass::Isotropic,
        (false, true) => SubspaceClass::Coisotropic,
        (false, false) => {
            if w.intersection_dim(&comp) == 0 && w.dim() > 0 && w.dim() < form.dim() {
                SubspaceClass::SymplecticLike
            } else {
                SubspaceClass::None
            }
        }
    }
}

/// An s-space: a form together with a designated admissible basis.
#[derive(Clone, Debug)]
pub struct SSpace {
    form: BilinearForm,
    admissible_basis: Vec<Vector>,
}

impl SSpace {
    /// Validates that the basis is admissible and the form has split
    /// signature (n, n); forms of any other signature are not isomorphic
    /// to the standard model and are rejected.
    pub fn new(form: BilinearForm, admissible_basis: Vec<Vector>) -> Result<Self, SformError> {
        let n = form.half_dim();
        let (p, q) = signature(&form);
        if (p, q) != (n, n) {
            return Err(SformError::SignatureNotSplit {
                positive: p,
                negative: q,
            });
        }
        if !is_admissible_basis(&form, &admissible_basis)? {
            return Err(SformError::NotAdmissible);
        }
        Ok(SSpace {
            form,
            admissible_basis,
        })
    }

    /// The standard model with its coordinate basis.
    pub fn standard(n: usize) -> Self {
        let form = BilinearForm::standard(n);
        let basis = (0..2 * n).map(|i| Vector::unit(2 * n, i)).collect();
        SSpace {
            form,
            admissible_basis: basis,
        }
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub fn admissible_basis(&self) -> &[Vector] {
        &self.admissible_basis
    }

    /// Gram matrix of the form in the designated basis.
    pub fn gram(&self) -> Matrix {
        restricted_gram(self.form.matrix(), &self.admissible_basis)
    }
}

/// Gram matrix of `form` restricted to the given vectors.
fn restricted_gram(form: &Matrix, vectors: &[Vector]) -> Matrix {
    let k = vectors.len();
    Matrix::from_fn(k, k, |i, j| form.bilinear(&vectors[i], &vectors[j]))
}

/// Returns a basis in which the Gram matrix of `form` equals the standard
/// s-form, by repeated extraction of hyperbolic pairs. The output is
/// ordered so that `s(u_i, w_j) = delta_ij` with all other products zero,
/// normalized to `s(u_i, w_i) = 1`.
pub fn standardize(form: &BilinearForm) -> Result<Vec<Vector>, SformError> {
    let n = form.half_dim();
    let (p, q) = signature(form);
    if (p, q) != (n, n) {
        return Err(SformError::SignatureNotSplit {
            positive: p,
            negative: q,
        });
    }
    let dim = form.dim();
    let mut current: Vec<Vector> = (0..dim).map(|i| Vector::unit(dim, i)).collect();
    let mut nulls: Vec<Vector> = Vec::with_capacity(n);
    let mut partners: Vec<Vector> = Vec::with_capacity(n);

    for _ in 0..n {
        let gram = restricted_gram(form.matrix(), &current);
        let coeffs = isotropic_vector(&gram).ok_or(SformError::NoRationalNullVector)?;
        let u = combine(&current, &coeffs).primitive();
        debug_assert!(form.matrix.bilinear(&u, &u).is_zero());

        // Any basis vector of the current block pairs nontrivially with u
        // (the restricted form is nondegenerate), so a partner exists.
        let (pairing, w0) = current
            .iter()
            .find_map(|c| {
                let val = form.matrix.bilinear(&u, c);
                (!val.is_zero()).then(|| (val, c.clone()))
            })
            .expect("nondegenerate restriction must pair u with some basis vector");
        let w1 = w0.scale(&(Rational::one() / pairing));
        let self_product = form.matrix.bilinear(&w1, &w1);
        let w = w1.sub(&u.scale(&(self_product / rat(2))));

        // Restrict to the orthogonal complement of span{u, w} inside the
        // current block: kernel of the 2 x k pairing matrix in coefficients.
        let k = current.len();
        let mut constraints = Matrix::zeros(2, k);
        for (col, c) in current.iter().enumerate() {
            constraints[(0, col)] = form.matrix.bilinear(&u, c);
            constraints[(1, col)] = form.matrix.bilinear(&w, c);
        }
        current = constraints
            .kernel_basis()
            .iter()
            .map(|coef| combine(&current, coef))
            .collect();

        nulls.push(u);
        partners.push(w);
    }

    let basis: Vec<Vector> = nulls.into_iter().chain(partners).collect();
    if restricted_gram(form.matrix(), &basis) != BilinearForm::standard(n).matrix {
        return Err(SformError::NoRationalNullVector);
    }
    Ok(basis)
}

fn combine(basis: &[Vector], coeffs: &Vector) -> Vector {
    assert_eq!(basis.len(), coeffs.dim());
    let mut acc = Vector::zeros(basis[0].dim());
    for (b, c) in basis.iter().zip(coeffs.iter()) {
        if !c.is_zero() {
            acc = acc.add(&b.scale(c));
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};

    fn vec2(a: i64, b: i64) -> Vector {
        Vector::from_i64(&[a, b])
    }

    #[test]
    fn standard_form_matrix_and_square() {
        let s1 = BilinearForm::standard(1);
        assert_eq!(s1.matrix(), &Matrix::from_i64(&[&[0, 1], &[1, 0]]));
        let s2 = BilinearForm::standard(2);
        assert_eq!(s2.dim(), 4);
        // s^2 = I and s^T = s.
        assert_eq!(s2.matrix().mul(s2.matrix()), Matrix::identity(4));
        assert!(s2.matrix().is_symmetric());
    }

    #[test]
    fn evaluate_standard_examples() {
        let s = BilinearForm::standard(1);
        assert_eq!(s.evaluate(&vec2(1, 0), &vec2(0, 1)).unwrap(), rat(1));
        assert_eq!(s.evaluate(&vec2(1, 0), &vec2(1, 0)).unwrap(), rat(0));
        let s2 = BilinearForm::standard(2);
        let v = Vector::from_i64(&[1, 2, 3, 4]);
        let w = Vector::from_i64(&[1, 1, 1, 1]);
        // Direct expansion: v1 w3 + v3 w1 + v2 w4 + v4 w2.
        let expected = &v[0] * &w[2] + &v[2] * &w[0] + &v[1] * &w[3] + &v[3] * &w[1];
        assert_eq!(expected, rat(10));
        assert_eq!(s2.evaluate(&v, &w).unwrap(), expected);
        assert!(s.evaluate(&v, &w).is_err());
    }

    #[test]
    fn evaluate_is_symmetric() {
        let s = BilinearForm::standard(2);
        let v = Vector::from_i64(&[1, -2, 3, 5]);
        let w = Vector::from_i64(&[7, 1, 0, -4]);
        assert_eq!(s.evaluate(&v, &w).unwrap(), s.evaluate(&w, &v).unwrap());
    }

    #[test]
    fn permanent_matches_standard_form() {
        assert_eq!(permanent2(&vec2(1, 0), &vec2(0, 1)).unwrap(), rat(1));
        assert_eq!(permanent2(&vec2(1, 2), &vec2(3, 4)).unwrap(), rat(10));
        assert!(permanent2(&Vector::from_i64(&[1, 2, 3]), &vec2(0, 1)).is_err());
    }

    #[test]
    fn admissibility_examples() {
        let s = BilinearForm::standard(1);
        assert!(is_admissible_basis(&s, &[vec2(1, 0), vec2(0, 1)]).unwrap());
        // s((1,1),(1,1)) = 2.
        assert!(!is_admissible_basis(&s, &[vec2(1, 1), vec2(1, -1)]).unwrap());
        // Dependent vectors are not a basis even if null.
        assert!(!is_admissible_basis(&s, &[vec2(1, 0), vec2(2, 0)]).unwrap());
        let euclid = BilinearForm::new(Matrix::identity(2)).unwrap();
        assert!(!is_admissible_basis(&euclid, &[vec2(1, 0), vec2(0, 1)]).unwrap());
        assert!(!is_admissible_basis(&euclid, &[vec2(1, 2), vec2(3, -1)]).unwrap());
    }

    #[test]
    fn block_trace_examples() {
        let s2 = BilinearForm::standard(2);
        assert_eq!(block_traces(&s2), vec![rat(0); 4]);
        let euclid = BilinearForm::new(Matrix::identity(2)).unwrap();
        assert_eq!(block_traces(&euclid), vec![rat(1), rat(2)]);
        let eta = BilinearForm::new(Matrix::from_i64(&[&[-1, 0], &[0, 1]])).unwrap();
        assert_eq!(block_traces(&eta), vec![rat(-1), rat(0)]);
    }

    #[test]
    fn signature_examples() {
        assert_eq!(signature(&BilinearForm::standard(1)), (1, 1));
        assert_eq!(signature(&BilinearForm::standard(2)), (2, 2));
        let euclid = BilinearForm::new(Matrix::identity(2)).unwrap();
        assert_eq!(signature(&euclid), (2, 0));
    }

    #[test]
    fn signature_oracle_via_explicit_congruence() {
        // Columns (e_i + e_{n+i}), (e_i - e_{n+i}) diagonalize the standard
        // form to diag(2,2,-2,-2): an independent route to (2,2).
        let s = BilinearForm::standard(2);
        let u = Matrix::from_i64(&[
            &[1, 0, 1, 0],
            &[0, 1, 0, 1],
            &[1, 0, -1, 0],
            &[0, 1, 0, -1],
        ]);
        let diag = s.matrix().congruence(&u);
        let expected = Matrix::from_rows(vec![
            vec![rat(2), rat(0), rat(0), rat(0)],
            vec![rat(0), rat(2), rat(0), rat(0)],
            vec![rat(0), rat(0), rat(-2), rat(0)],
            vec![rat(0), rat(0), rat(0), rat(-2)],
        ]);
        assert_eq!(diag, expected);
    }

    #[test]
    fn form_construction_rejects_bad_inputs() {
        assert_eq!(
            BilinearForm::new(Matrix::from_i64(&[&[1, 1], &[1, 1]])).unwrap_err(),
            SformError::Degenerate
        );
        assert_eq!(
            BilinearForm::new(Matrix::from_i64(&[&[1, 2], &[3, 4]])).unwrap_err(),
            SformError::NotSymmetric
        );
        assert!(matches!(
            BilinearForm::new(Matrix::identity(3)).unwrap_err(),
            SformError::OddDimension(3)
        ));
    }

    #[test]
    fn complement_examples() {
        let s = BilinearForm::standard(1);
        let w = Subspace::new(2, vec![vec2(1, 0)]).unwrap();
        let comp = orthogonal_complement(&s, &w);
        assert_eq!(comp.dim(), 1);
        assert!(comp.contains(&vec2(1, 0)));

        let full = Subspace::full(2);
        assert_eq!(orthogonal_complement(&s, &full).dim(), 0);

        let diag = Subspace::new(2, vec![vec2(1, 1)]).unwrap();
        let comp = orthogonal_complement(&s, &diag);
        assert_eq!(comp.dim(), 1);
        assert!(comp.contains(&vec2(1, -1)));
    }

    #[test]
    fn classification_examples() {
        let s = BilinearForm::standard(1);
        let span_b1 = Subspace::new(2, vec![vec2(1, 0)]).unwrap();
        assert_eq!(classify_subspace(&s, &span_b1), SubspaceClass::Lagrangian);
        let span_b2 = Subspace::new(2, vec![vec2(0, 1)]).unwrap();
        assert_eq!(classify_subspace(&s, &span_b2), SubspaceClass::Lagrangian);

        let s2 = BilinearForm::standard(2);
        let line = Subspace::new(4, vec![Vector::from_i64(&[1, 0, 0, 0])]).unwrap();
        assert_eq!(classify_subspace(&s2, &line), SubspaceClass::Isotropic);

        let diag = Subspace::new(2, vec![vec2(1, 1)]).unwrap();
        assert_eq!(classify_subspace(&s, &diag), SubspaceClass::SymplecticLike);

        let full = Subspace::full(2);
        assert_eq!(classify_subspace(&s, &full), SubspaceClass::Coisotropic);
        let trivial = Subspace::trivial(2);
        assert_eq!(classify_subspace(&s, &trivial), SubspaceClass::Isotropic);
    }

    #[test]
    fn isometry_examples() {
        let s = BilinearForm::standard(1);
        assert!(verify_isometry(&Matrix::identity(2), &s, &s).unwrap());
        let doubled = Matrix::identity(2).scale(&rat(2));
        assert!(!verify_isometry(&doubled, &s, &s).unwrap());
    }

    #[test]
    fn standardize_eta_by_hand() {
        // diag(-1, 1): the hyperbolic pair (1,1), (-1/2, 1/2) works.
        let eta = BilinearForm::new(Matrix::from_i64(&[&[-1, 0], &[0, 1]])).unwrap();
        let hand = [vec2(1, 1), Vector::new(vec![ratio(-1, 2), ratio(1, 2)])];
        let gram = Matrix::from_fn(2, 2, |i, j| eta.matrix().bilinear(&hand[i], &hand[j]));
        assert_eq!(gram, BilinearForm::standard(1).matrix().clone());

        let basis = standardize(&eta).unwrap();
        let gram = Matrix::from_fn(2, 2, |i, j| eta.matrix().bilinear(&basis[i], &basis[j]));
        assert_eq!(gram, BilinearForm::standard(1).matrix().clone());
    }

    #[test]
    fn standardize_standard_form_is_consistent() {
        for n in 1..=3 {
            let s = BilinearForm::standard(n);
            let basis = standardize(&s).unwrap();
            let gram =
                Matrix::from_fn(2 * n, 2 * n, |i, j| s.matrix().bilinear(&basis[i], &basis[j]));
            assert_eq!(gram, s.matrix().clone());
        }
    }

    #[test]
    fn standardize_rejects_wrong_signature() {
        let euclid = BilinearForm::new(Matrix::identity(2)).unwrap();
        assert_eq!(
            standardize(&euclid).unwrap_err(),
            SformError::SignatureNotSplit {
                positive: 2,
                negative: 0
            }
        );
    }

    #[test]
    fn standardize_rejects_rationally_anisotropic_split_form() {
        // x^2 - 2 y^2 has signature (1,1) but no rational null vector.
        let f = BilinearForm::new(Matrix::from_i64(&[&[1, 0], &[0, -2]])).unwrap();
        assert_eq!(standardize(&f).unwrap_err(), SformError::NoRationalNullVector);
    }

    #[test]
    fn standardize_congruence_transform() {
        let s = BilinearForm::standard(2);
        let m = Matrix::from_i64(&[
            &[1, 2, 0, 1],
            &[0, 1, 1, 0],
            &[1, 0, 1, 1],
            &[2, 1, 0, 1],
        ]);
        assert!(!m.det().is_zero());
        let g = BilinearForm::new(s.matrix().congruence(&m)).unwrap();
        let basis = standardize(&g).unwrap();
        let gram = Matrix::from_fn(4, 4, |i, j| g.matrix().bilinear(&basis[i], &basis[j]));
        assert_eq!(gram, s.matrix().clone());
    }

    #[test]
    fn sspace_validation() {
        assert!(SSpace::standard(2).gram() == BilinearForm::standard(2).matrix().clone());
        let euclid = BilinearForm::new(Matrix::identity(2)).unwrap();
        assert!(matches!(
            SSpace::new(euclid, vec![vec2(1, 0), vec2(0, 1)]),
            Err(SformError::SignatureNotSplit { .. })
        ));
        let s = BilinearForm::standard(1);
        assert!(matches!(
            SSpace::new(s, vec![vec2(1, 1), vec2(1, -1)]),
            Err(SformError::NotAdmissible)
        ));
    }
}
