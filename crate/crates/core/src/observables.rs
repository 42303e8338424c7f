//! Exact Poisson brackets on quadratic phase-space observables, the four
//! oscillator integrals of motion, and bracket-algebra classification.
//!
//! A quadratic observable `f(z) = z^T F z` over `z = (x1, x2, p1, p2)` is
//! stored as its symmetric rational Gram matrix `F`. With the symplectic
//! form `Omega_g = [[0, g^-1], [-g^-1, 0]]` of a metric `g`, the bracket of
//! two quadratics is again quadratic with Gram matrix
//!
//! ```text
//! {f, h}  <->  2 (F Omega H - H Omega F)
//! ```
//!
//! which keeps the whole algebra exact: antisymmetry, Jacobi, closure, and
//! the quadratic identity among the four integrals are all equality checks
//! on rational matrices or polynomials, never float comparisons.
//!
//! The four Jauch-Hill-Fradkin components are built with the potential
//! terms of `H0` and `H2` carrying `m w^2 / 2` (so `H0` is the Euclidean
//! Hamiltonian); the variant with the full `m w^2` coefficient is kept
//! available because the quadratic identity fails under it, and the
//! identity report documents that failure.

use crate::exact::{rat, ratio, Matrix, Rational, Vector};
use crate::mechanics::{Metric, MetricKind, OscillatorParams, PhasePoint, SymplecticForm};
use crate::poly::Poly;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ObservablesError {
    #[error("gram matrix must be symmetric 4x4")]
    BadGram,
    #[error("basis elements are dependent as quadratic forms")]
    DependentBasis,
    #[error("bracket {{e_{i}, e_{j}}} escapes the span of the basis")]
    NotClosed {
        i: usize,
        j: usize,
        residual: QuadraticObservable,
    },
    #[error("Jacobi identity violated on the basis")]
    JacobiViolation,
}

/// A homogeneous quadratic function on phase space, `f(z) = z^T F z`.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadraticObservable {
    gram: Matrix,
    label: Option<String>,
}

impl QuadraticObservable {
    pub fn new(gram: Matrix, label: Option<String>) -> Result<Self, ObservablesError> {
        if gram.rows() != 4 || gram.cols() != 4 || !gram.is_symmetric() {
            return Err(ObservablesError::BadGram);
        }
        Ok(QuadraticObservable { gram, label })
    }

    pub fn zero() -> Self {
        QuadraticObservable {
            gram: Matrix::zeros(4, 4),
            label: None,
        }
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn is_zero(&self) -> bool {
        self.gram.is_zero()
    }

    pub fn add(&self, other: &QuadraticObservable) -> QuadraticObservable {
        QuadraticObservable {
            gram: self.gram.add(&other.gram),
            label: None,
        }
    }

    pub fn sub(&self, other: &QuadraticObservable) -> QuadraticObservable {
        QuadraticObservable {
            gram: self.gram.sub(&other.gram),
            label: None,
        }
    }

    pub fn scale(&self, c: &Rational) -> QuadraticObservable {
        QuadraticObservable {
            gram: self.gram.scale(c),
            label: None,
        }
    }

    /// `z^T F z` at the point's `(x1, x2, p1, p2)` coordinates.
    pub fn evaluate(&self, point: &PhasePoint) -> f64 {
        let z = point.coords();
        let g = self.gram.to_f64();
        let mut acc = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                acc += z[i] * g[i][j] * z[j];
            }
        }
        acc
    }

    pub fn evaluate_exact(&self, z: &[Rational; 4]) -> Rational {
        let v = Vector::new(z.to_vec());
        self.gram.bilinear(&v, &v)
    }

    /// The observable as a degree-2 polynomial in `(x1, x2, p1, p2)`.
    pub fn to_poly(&self) -> Poly {
        let mut out = Poly::zero(4);
        for i in 0..4 {
            for j in 0..4 {
                if self.gram[(i, j)].is_zero() {
                    continue;
                }
                let zi = Poly::var(4, i);
                let zj = Poly::var(4, j);
                out = &out + &(&zi * &zj).scale(&self.gram[(i, j)]);
            }
        }
        out
    }
}

impl fmt::Debug for QuadraticObservable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.label {
            Some(l) => write!(f, "QuadraticObservable({l})"),
            None => write!(f, "QuadraticObservable {:?}", self.gram),
        }
    }
}

/// Free-function form of [`QuadraticObservable::evaluate`].
pub fn evaluate_observable(f: &QuadraticObservable, point: &PhasePoint) -> f64 {
    f.evaluate(point)
}

fn sym_entry(gram: &mut Matrix, i: usize, j: usize, value: Rational) {
    gram[(i, j)] = value.clone();
    gram[(j, i)] = value;
}

/// The four integrals of motion of the D=2 isotropic oscillator, from
/// exact rational mass and frequency:
///
/// ```text
/// H0 = (1/2m)(p1^2 + p2^2) + (m w^2/2)(x1^2 + x2^2)
/// H1 = (1/m) p1 p2 + m w^2 x1 x2
/// H2 = (1/2m)(p2^2 - p1^2) + (m w^2/2)(x2^2 - x1^2)
/// H3 = w (x1 p2 - x2 p1)
/// ```
pub fn jhf_components_exact(mass: &Rational, omega: &Rational) -> [QuadraticObservable; 4] {
    let half = ratio(1, 2);
    let kin = &half / mass; // 1/(2m)
    let pot = &half * mass * omega * omega; // m w^2 / 2
    let half_omega = &half * omega;

    let mut h0 = Matrix::zeros(4, 4);
    h0[(0, 0)] = pot.clone();
    h0[(1, 1)] = pot.clone();
    h0[(2, 2)] = kin.clone();
    h0[(3, 3)] = kin.clone();

    let mut h1 = Matrix::zeros(4, 4);
    sym_entry(&mut h1, 0, 1, pot.clone());
    sym_entry(&mut h1, 2, 3, kin.clone());

    let mut h2 = Matrix::zeros(4, 4);
    h2[(0, 0)] = -pot.clone();
    h2[(1, 1)] = pot.clone();
    h2[(2, 2)] = -kin.clone();
    h2[(3, 3)] = kin.clone();

    let mut h3 = Matrix::zeros(4, 4);
    sym_entry(&mut h3, 0, 3, half_omega.clone());
    sym_entry(&mut h3, 1, 2, -half_omega);

    [
        QuadraticObservable { gram: h0, label: Some("H0".into()) },
        QuadraticObservable { gram: h1, label: Some("H1".into()) },
        QuadraticObservable { gram: h2, label: Some("H2".into()) },
        QuadraticObservable { gram: h3, label: Some("H3".into()) },
    ]
}

/// [`jhf_components_exact`] with the float parameters rationalized exactly.
pub fn jhf_components(params: &OscillatorParams) -> [QuadraticObservable; 4] {
    jhf_components_exact(&params.mass_exact(), &params.omega_exact())
}

/// Variant with the potential terms of `H0` and `H2` carrying the full
/// `m w^2` coefficient instead of `m w^2 / 2`. The quadratic identity
/// `H0^2 - H1^2 - H2^2 - H3^2 = 0` does not survive this normalization;
/// [`check_identity`] documents that.
pub fn jhf_components_unhalved_exact(mass: &Rational, omega: &Rational) -> [QuadraticObservable; 4] {
    let [h0, h1, h2, h3] = jhf_components_exact(mass, omega);
    let pot = mass * omega * omega;
    let mut g0 = h0.gram().clone();
    g0[(0, 0)] = pot.clone();
    g0[(1, 1)] = pot.clone();
    let mut g2 = h2.gram().clone();
    g2[(0, 0)] = -pot.clone();
    g2[(1, 1)] = pot;
    [
        QuadraticObservable { gram: g0, label: Some("H0-unhalved".into()) },
        h1,
        QuadraticObservable { gram: g2, label: Some("H2-unhalved".into()) },
        h3,
    ]
}

/// Exact Poisson bracket of two quadratics under the symplectic form of
/// `metric`: `{f, h} = (grad f)^T Omega (grad h)`, with Gram matrix
/// `2 (F Omega H - H Omega F)`. Antisymmetric, bilinear, and satisfies the
/// Jacobi identity exactly.
pub fn poisson_bracket(
    f: &QuadraticObservable,
    h: &QuadraticObservable,
    metric: &Metric,
) -> QuadraticObservable {
    let omega = SymplecticForm::from_metric(metric);
    let fo = f.gram.mul(omega.matrix());
    let fwd = fo.mul(&h.gram);
    let bwd = h.gram.mul(omega.matrix()).mul(&f.gram);
    QuadraticObservable {
        gram: fwd.sub(&bwd).scale(&rat(2)),
        label: None,
    }
}

/// The geometry's Hamiltonian as a quadratic observable:
/// `(1/2m) g^-1(p,p) + (m w^2/2) g^-1(x,x)` on dualized coordinates.
/// Coincides with `H0`, `H2`, `H1` for the Euclidean, hyperbolic, and
/// s-form metrics respectively.
pub fn geometry_hamiltonian(metric: &Metric, params: &OscillatorParams) -> QuadraticObservable {
    let mass = params.mass_exact();
    let omega = params.omega_exact();
    let half = ratio(1, 2);
    let kin = &half / &mass;
    let pot = &half * &mass * &omega * &omega;
    let ginv = metric.inverse();
    let mut gram = Matrix::zeros(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            gram[(i, j)] = &pot * &ginv[(i, j)];
            gram[(2 + i, 2 + j)] = &kin * &ginv[(i, j)];
        }
    }
    QuadraticObservable {
        gram,
        label: Some(format!("H[{}]", metric.kind())),
    }
}

/// True iff `{f, g}` vanishes identically under the metric's bracket.
pub fn commutes(f: &QuadraticObservable, g: &QuadraticObservable, metric: &Metric) -> bool {
    poisson_bracket(f, g, metric).is_zero()
}

/// True iff `f` Poisson-commutes with the geometry's own Hamiltonian,
/// i.e. is an integral of motion for that geometry.
pub fn conserved_under(
    f: &QuadraticObservable,
    metric: &Metric,
    params: &OscillatorParams,
) -> bool {
    commutes(f, &geometry_hamiltonian(metric, params), metric)
}

const DEFAULT_SEED: u64 = 0x5eed;
const DEFAULT_SAMPLES: usize = 1000;

/// Seed for randomized residual sampling: `SPLECTIC_SEED` if set, else a
/// fixed default, so reports are reproducible.
pub fn sampling_seed() -> u64 {
    std::env::var("SPLECTIC_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

/// Outcome of verifying `H0^2 - H1^2 - H2^2 - H3^2 = 0` both symbolically
/// and numerically, with the unhalved-coefficient expansion documented
/// alongside.
#[derive(Debug, Clone, serde::Serialize)]
pub struct IdentityReport {
    /// The identity holds as an exact polynomial with the halved potential
    /// normalization.
    pub symbolic_zero: bool,
    /// Whether the identity also holds with the full `m w^2` potential
    /// coefficients (it does not; recorded for documentation).
    pub unhalved_symbolic_zero: bool,
    pub max_abs_residual: f64,
    pub max_rel_residual: f64,
    pub samples: usize,
    pub seed: u64,
}

/// The quadratic identity as a degree-4 polynomial over
/// `(x1, x2, p1, p2)`; zero exactly when the identity holds.
pub fn identity_polynomial(components: &[QuadraticObservable; 4]) -> Poly {
    let [h0, h1, h2, h3] = components;
    let p0 = h0.to_poly();
    let p1 = h1.to_poly();
    let p2 = h2.to_poly();
    let p3 = h3.to_poly();
    &(&(&(&p0 * &p0) - &(&p1 * &p1)) - &(&p2 * &p2)) - &(&p3 * &p3)
}

pub fn check_identity(params: &OscillatorParams) -> IdentityReport {
    check_identity_with(params, DEFAULT_SAMPLES, sampling_seed())
}

pub fn check_identity_with(
    params: &OscillatorParams,
    samples: usize,
    seed: u64,
) -> IdentityReport {
    let mass = params.mass_exact();
    let omega = params.omega_exact();
    let halved = jhf_components_exact(&mass, &omega);
    let unhalved = jhf_components_unhalved_exact(&mass, &omega);
    let symbolic_zero = identity_polynomial(&halved).is_zero();
    let unhalved_symbolic_zero = identity_polynomial(&unhalved).is_zero();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_abs = 0.0f64;
    let mut max_rel = 0.0f64;
    for _ in 0..samples {
        let point = PhasePoint::new(
            [rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)],
            [rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)],
        );
        let values: Vec<f64> = halved.iter().map(|h| h.evaluate(&point)).collect();
        let residual = values[0] * values[0]
            - values[1] * values[1]
            - values[2] * values[2]
            - values[3] * values[3];
        let scale = values
            .iter()
            .map(|v| v * v)
            .fold(0.0f64, f64::max)
            .max(1e-300);
        max_abs = max_abs.max(residual.abs());
        max_rel = max_rel.max(residual.abs() / scale);
    }
    IdentityReport {
        symbolic_zero,
        unhalved_symbolic_zero,
        max_abs_residual: max_abs,
        max_rel_residual: max_rel,
        samples,
        seed,
    }
}

/// A closed 3-dimensional bracket algebra: basis, exact structure
/// constants `{e_i, e_j} = sum_k c^k_ij e_k`, and the Killing form
/// `kappa_ij = sum_{a,b} c^a_ib c^b_ja`.
#[derive(Debug, Clone)]
pub struct BracketStructure {
    basis: [QuadraticObservable; 3],
    constants: Vec<Vec<Vec<Rational>>>,
    killing: Matrix,
}

impl BracketStructure {
    pub fn basis(&self) -> &[QuadraticObservable; 3] {
        &self.basis
    }

    /// `c^k_ij`.
    pub fn constant(&self, k: usize, i: usize, j: usize) -> &Rational {
        &self.constants[k][i][j]
    }

    pub fn constants(&self) -> &Vec<Vec<Vec<Rational>>> {
        &self.constants
    }

    pub fn killing(&self) -> &Matrix {
        &self.killing
    }

    pub fn is_abelian(&self) -> bool {
        self.constants
            .iter()
            .all(|k| k.iter().all(|row| row.iter().all(Zero::is_zero)))
    }
}

/// Expresses the pairwise brackets of `basis` in the basis itself and
/// assembles structure constants and the Killing form. Fails when the
/// basis is dependent, when a bracket escapes the span (the error carries
/// the out-of-span residual), or if Jacobi were ever violated.
pub fn structure_constants(
    basis: &[QuadraticObservable; 3],
    metric: &Metric,
) -> Result<BracketStructure, ObservablesError> {
    // Quadratic forms vectorized over the 10 independent entries.
    let vectorize = |q: &QuadraticObservable| -> Vec<Rational> {
        let mut out = Vec::with_capacity(10);
        for i in 0..4 {
            for j in i..4 {
                out.push(q.gram[(i, j)].clone());
            }
        }
        out
    };
    let b = Matrix::from_fn(10, 3, |r, c| vectorize(&basis[c])[r].clone());
    if b.rank() != 3 {
        return Err(ObservablesError::DependentBasis);
    }

    let mut constants = vec![vec![vec![Rational::zero(); 3]; 3]; 3];
    for i in 0..3 {
        for j in (i + 1)..3 {
            let bracket = poisson_bracket(&basis[i], &basis[j], metric);
            let target = Vector::new(vectorize(&bracket));
            let coeffs = match b.solve(&target) {
                Some(c) => c,
                None => {
                    // Project onto the span (normal equations are exactly
                    // solvable at full column rank) to report what is left
                    // over.
                    let bt = b.transpose();
                    let gram = bt.mul(&b);
                    let rhs = bt.mul_vec(&target);
                    let c = gram
                        .inverse()
                        .expect("full column rank")
                        .mul_vec(&rhs);
                    let mut reachable = QuadraticObservable::zero();
                    for (k, ck) in c.iter().enumerate() {
                        reachable = reachable.add(&basis[k].scale(ck));
                    }
                    return Err(ObservablesError::NotClosed {
                        i,
                        j,
                        residual: bracket.sub(&reachable),
                    });
                }
            };
            for k in 0..3 {
                constants[k][i][j] = coeffs[k].clone();
                constants[k][j][i] = -coeffs[k].clone();
            }
        }
    }

    // Jacobi on the only independent triple; exactness of the bracket
    // engine makes this a proper invariant of the type.
    let jac = poisson_bracket(&basis[0], &poisson_bracket(&basis[1], &basis[2], metric), metric)
        .add(&poisson_bracket(
            &basis[1],
            &poisson_bracket(&basis[2], &basis[0], metric),
            metric,
        ))
        .add(&poisson_bracket(
            &basis[2],
            &poisson_bracket(&basis[0], &basis[1], metric),
            metric,
        ));
    if !jac.is_zero() {
        return Err(ObservablesError::JacobiViolation);
    }

    let killing = Matrix::from_fn(3, 3, |i, j| {
        let mut acc = Rational::zero();
        for a in 0..3 {
            for bb in 0..3 {
                acc += &constants[a][i][bb] * &constants[bb][j][a];
            }
        }
        acc
    });

    Ok(BracketStructure {
        basis: basis.clone(),
        constants,
        killing,
    })
}

/// Classification of a 3-dimensional real bracket algebra by its exact
/// Killing signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraClass {
    Su2,
    Su11,
    Abelian,
    Other,
}

impl fmt::Display for AlgebraClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlgebraClass::Su2 => "su2",
            AlgebraClass::Su11 => "su11",
            AlgebraClass::Abelian => "abelian",
            AlgebraClass::Other => "other",
        })
    }
}

/// `su2` iff the Killing form is negative definite, `su11` iff it is
/// nondegenerate indefinite, `abelian` iff all constants vanish; anything
/// else (necessarily degenerate) is `other`.
pub fn classify_algebra(structure: &BracketStructure) -> AlgebraClass {
    if structure.is_abelian() {
        return AlgebraClass::Abelian;
    }
    let (pos, neg, zero) = structure.killing.inertia();
    if zero > 0 {
        return AlgebraClass::Other;
    }
    match (pos, neg) {
        (0, 3) => AlgebraClass::Su2,
        (p, q) if p > 0 && q > 0 => AlgebraClass::Su11,
        _ => AlgebraClass::Other,
    }
}

/// The named integral triples: Euclidean `(H1, H2, H3)`, hyperbolic
/// `(H0, H1, H3)`, s-form `(H0, H2, H3)`.
pub fn geometry_triple(
    kind: MetricKind,
    params: &OscillatorParams,
) -> Option<[QuadraticObservable; 3]> {
    let [h0, h1, h2, h3] = jhf_components(params);
    match kind {
        MetricKind::Euclidean => Some([h1, h2, h3]),
        MetricKind::Hyperbolic => Some([h0, h1, h3]),
        MetricKind::SForm => Some([h0, h2, h3]),
        MetricKind::Custom => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn unit_params() -> OscillatorParams {
        OscillatorParams::new(1.0, 1.0).unwrap()
    }

    fn jhf_unit() -> [QuadraticObservable; 4] {
        jhf_components(&unit_params())
    }

    #[test]
    fn jhf_values_at_reference_point() {
        let [h0, h1, h2, h3] = jhf_unit();
        let point = PhasePoint::new([1.0, 0.0], [0.0, 1.0]);
        assert_eq!(h0.evaluate(&point), 1.0);
        assert_eq!(h1.evaluate(&point), 0.0);
        assert_eq!(h2.evaluate(&point), 0.0);
        assert_eq!(h3.evaluate(&point), 1.0);

        let origin = PhasePoint::new([0.0, 0.0], [0.0, 0.0]);
        for h in jhf_unit() {
            assert_eq!(h.evaluate(&origin), 0.0);
        }
    }

    #[test]
    fn h0_is_euclidean_hamiltonian() {
        let params = OscillatorParams::new(1.5, 0.8).unwrap();
        let [h0, ..] = jhf_components(&params);
        let delta = Metric::euclidean();
        assert_eq!(h0.gram(), geometry_hamiltonian(&delta, &params).gram());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let point = PhasePoint::new(
                [rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0)],
                [rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0)],
            );
            let via_obs = h0.evaluate(&point);
            let via_mech = crate::mechanics::hamiltonian_value(&params, &delta, &point);
            assert!((via_obs - via_mech).abs() < 1e-12 * via_mech.abs().max(1.0));
        }
    }

    #[test]
    fn geometry_hamiltonians_match_named_integrals() {
        let params = OscillatorParams::new(2.0, 1.25).unwrap();
        let [h0, h1, h2, _] = jhf_components(&params);
        assert_eq!(
            geometry_hamiltonian(&Metric::euclidean(), &params).gram(),
            h0.gram()
        );
        assert_eq!(
            geometry_hamiltonian(&Metric::hyperbolic(), &params).gram(),
            h2.gram()
        );
        assert_eq!(
            geometry_hamiltonian(&Metric::s_form(), &params).gram(),
            h1.gram()
        );
    }

    #[test]
    fn evaluate_examples() {
        let zero = QuadraticObservable::zero();
        let point = PhasePoint::new([1.3, -0.4], [0.2, 2.0]);
        assert_eq!(zero.evaluate(&point), 0.0);

        let [_, _, _, h3] = jhf_unit();
        assert_eq!(h3.evaluate(&PhasePoint::new([1.0, 0.0], [0.0, 1.0])), 1.0);

        // Linearity in the gram matrix.
        let scaled = h3.scale(&rat(3));
        assert_eq!(scaled.evaluate(&point), 3.0 * h3.evaluate(&point));
    }

    #[test]
    fn bracket_examples_euclidean() {
        let [h0, h1, h2, h3] = jhf_unit();
        let delta = Metric::euclidean();
        let b12 = poisson_bracket(&h1, &h2, &delta);
        assert_eq!(b12.gram(), h3.scale(&rat(2)).gram());
        assert!(poisson_bracket(&h0, &h1, &delta).is_zero());
        assert!(poisson_bracket(&h1, &h1, &delta).is_zero());
    }

    #[test]
    fn bracket_examples_s_form() {
        let [h0, _, h2, h3] = jhf_unit();
        let s = Metric::s_form();
        let b03 = poisson_bracket(&h0, &h3, &s);
        assert_eq!(b03.gram(), h2.scale(&rat(-2)).gram());
    }

    #[test]
    fn conservation_per_geometry() {
        let params = unit_params();
        for metric in [Metric::euclidean(), Metric::hyperbolic(), Metric::s_form()] {
            for h in jhf_components(&params) {
                assert!(
                    conserved_under(&h, &metric, &params),
                    "{:?} not conserved under {}",
                    h.label(),
                    metric.kind()
                );
            }
        }
        // Conservation is bracket-relative: H1 does not commute with H2
        // under the Euclidean bracket.
        let [_, h1, h2, _] = jhf_unit();
        assert!(!commutes(&h1, &h2, &Metric::euclidean()));
    }

    #[test]
    fn identity_report() {
        let report = check_identity_with(&unit_params(), 200, 42);
        assert!(report.symbolic_zero);
        assert!(!report.unhalved_symbolic_zero);
        assert!(report.max_rel_residual <= 1e-12);

        // Direct spot check at the reference point: 1 - 0 - 0 - 1 = 0.
        let [h0, h1, h2, h3] = jhf_unit();
        let point = PhasePoint::new([1.0, 0.0], [0.0, 1.0]);
        let residual = h0.evaluate(&point).powi(2) - h1.evaluate(&point).powi(2)
            - h2.evaluate(&point).powi(2)
            - h3.evaluate(&point).powi(2);
        assert_eq!(residual, 0.0);
    }

    #[test]
    fn identity_holds_for_rational_parameters() {
        let pairs = [(rat(2), ratio(3, 2)), (ratio(7, 3), ratio(1, 5))];
        for (m, w) in pairs {
            assert!(identity_polynomial(&jhf_components_exact(&m, &w)).is_zero());
            assert!(!identity_polynomial(&jhf_components_unhalved_exact(&m, &w)).is_zero());
        }
    }

    #[test]
    fn euclidean_triple_is_su2() {
        let params = unit_params();
        let triple = geometry_triple(MetricKind::Euclidean, &params).unwrap();
        let s = structure_constants(&triple, &Metric::euclidean()).unwrap();
        // {H1,H2} = 2H3, {H2,H3} = 2H1, {H3,H1} = 2H2.
        assert_eq!(s.constant(2, 0, 1), &rat(2));
        assert_eq!(s.constant(0, 1, 2), &rat(2));
        assert_eq!(s.constant(1, 2, 0), &rat(2));
        assert_eq!(classify_algebra(&s), AlgebraClass::Su2);
        let expected_killing = Matrix::from_i64(&[&[-8, 0, 0], &[0, -8, 0], &[0, 0, -8]]);
        assert_eq!(s.killing(), &expected_killing);
    }

    #[test]
    fn hyperbolic_triple_is_su11() {
        let params = unit_params();
        let triple = geometry_triple(MetricKind::Hyperbolic, &params).unwrap();
        let s = structure_constants(&triple, &Metric::hyperbolic()).unwrap();
        assert_eq!(classify_algebra(&s), AlgebraClass::Su11);
    }

    #[test]
    fn s_form_triple_is_su11() {
        let params = unit_params();
        let triple = geometry_triple(MetricKind::SForm, &params).unwrap();
        let s = structure_constants(&triple, &Metric::s_form()).unwrap();
        // {H0,H2} = 2H3, {H0,H3} = -2H2, {H2,H3} = -2H0.
        assert_eq!(s.constant(2, 0, 1), &rat(2));
        assert_eq!(s.constant(1, 0, 2), &rat(-2));
        assert_eq!(s.constant(0, 1, 2), &rat(-2));
        assert_eq!(classify_algebra(&s), AlgebraClass::Su11);
    }

    #[test]
    fn open_triple_reports_not_closed() {
        let [h0, h1, h2, _] = jhf_unit();
        let err = structure_constants(&[h0, h1, h2], &Metric::euclidean()).unwrap_err();
        match err {
            ObservablesError::NotClosed { i, j, residual } => {
                assert_eq!((i, j), (1, 2)); // {H1, H2} = 2 H3 is outside
                assert!(!residual.is_zero());
            }
            other => panic!("expected NotClosed, got {other:?}"),
        }
    }

    #[test]
    fn dependent_basis_rejected() {
        let [h0, h1, _, _] = jhf_unit();
        let sum = h0.add(&h1);
        let err = structure_constants(&[h0, h1, sum], &Metric::euclidean()).unwrap_err();
        assert!(matches!(err, ObservablesError::DependentBasis));
    }

    #[test]
    fn abelian_classification() {
        // Three commuting quadratics: functions of p only.
        let mut a = Matrix::zeros(4, 4);
        a[(2, 2)] = rat(1);
        let mut b = Matrix::zeros(4, 4);
        b[(3, 3)] = rat(1);
        let mut c = Matrix::zeros(4, 4);
        sym_entry(&mut c, 2, 3, rat(1));
        let basis = [
            QuadraticObservable::new(a, None).unwrap(),
            QuadraticObservable::new(b, None).unwrap(),
            QuadraticObservable::new(c, None).unwrap(),
        ];
        let s = structure_constants(&basis, &Metric::euclidean()).unwrap();
        assert_eq!(classify_algebra(&s), AlgebraClass::Abelian);
    }

    #[test]
    fn bracket_matches_symbolic_oracle() {
        // Independent route: expand (grad f)^T Omega (grad g) termwise as
        // polynomials and compare with the matrix-level bracket.
        let params = OscillatorParams::new(1.0, 1.0).unwrap();
        let components = jhf_components(&params);
        for metric in [Metric::euclidean(), Metric::hyperbolic(), Metric::s_form()] {
            let omega = SymplecticForm::from_metric(&metric);
            for f in &components {
                for g in &components {
                    let via_matrix = poisson_bracket(f, g, &metric).to_poly();
                    let via_poly = poly_bracket(&f.to_poly(), &g.to_poly(), omega.matrix());
                    assert_eq!(via_matrix, via_poly);
                }
            }
        }
    }

    /// Test-side oracle: `sum_ij (df/dz_i) Omega_ij (dg/dz_j)`.
    fn poly_bracket(f: &Poly, g: &Poly, omega: &Matrix) -> Poly {
        let mut acc = Poly::zero(4);
        for i in 0..4 {
            for j in 0..4 {
                if omega[(i, j)].is_zero() {
                    continue;
                }
                let term = (&f.partial(i) * &g.partial(j)).scale(&omega[(i, j)]);
                acc = &acc + &term;
            }
        }
        acc
    }
}
