//! Hamiltonian dynamics of the D=2 isotropic harmonic oscillator over a
//! configurable configuration-space metric.
//!
//! All dynamics run in dualized coordinates `x_i = g_ij x^j`, where
//! Hamilton's equations take the metric-independent form
//!
//! ```text
//! dx_i/dt = p_i / m        dp_i/dt = -m w^2 x_i
//! ```
//!
//! so trajectories from identical dualized initial data coincide for every
//! nondegenerate symmetric metric. The metric enters only through the
//! Hamiltonian (and hence the conserved quantities), the symplectic form,
//! and the conversion back to contravariant coordinates for display.
//! Metrics stay exact rational; state vectors are `f64`.

use crate::exact::{rational_to_f64, Matrix, Rational};
use num_traits::Zero;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum MechanicsError {
    #[error("mass and frequency must be positive and finite")]
    BadParameters,
    #[error("metric must be a symmetric nondegenerate 2x2 matrix")]
    BadMetric,
    #[error("step and duration must be positive and finite")]
    BadStep,
    #[error("non-finite state at step {step}")]
    NonFinite { step: usize },
}

/// Mass and angular frequency of the oscillator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorParams {
    mass: f64,
    omega: f64,
}

impl OscillatorParams {
    pub fn new(mass: f64, omega: f64) -> Result<Self, MechanicsError> {
        if !(mass.is_finite() && omega.is_finite() && mass > 0.0 && omega > 0.0) {
            return Err(MechanicsError::BadParameters);
        }
        Ok(OscillatorParams { mass, omega })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn period(&self) -> f64 {
        std::f64::consts::TAU / self.omega
    }

    /// Exact rationalization of the mass (binary expansion of the float).
    pub fn mass_exact(&self) -> Rational {
        crate::exact::rational_from_f64(self.mass).expect("finite by construction")
    }

    pub fn omega_exact(&self) -> Rational {
        crate::exact::rational_from_f64(self.omega).expect("finite by construction")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricKind {
    Euclidean,
    Hyperbolic,
    #[serde(rename = "s")]
    SForm,
    Custom,
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            MetricKind::Euclidean => "euclidean",
            MetricKind::Hyperbolic => "hyperbolic",
            MetricKind::SForm => "s",
            MetricKind::Custom => "custom",
        };
        f.write_str(name)
    }
}

/// A 2x2 exact, symmetric, nondegenerate configuration-space metric.
/// The three named kinds carry their standard matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Metric {
    kind: MetricKind,
    matrix: Matrix,
    inverse: Matrix,
}

impl Metric {
    pub fn euclidean() -> Self {
        let m = Matrix::identity(2);
        Metric {
            kind: MetricKind::Euclidean,
            inverse: m.clone(),
            matrix: m,
        }
    }

    pub fn hyperbolic() -> Self {
        let m = Matrix::from_i64(&[&[-1, 0], &[0, 1]]);
        Metric {
            kind: MetricKind::Hyperbolic,
            inverse: m.clone(),
            matrix: m,
        }
    }

    pub fn s_form() -> Self {
        let m = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        Metric {
            kind: MetricKind::SForm,
            inverse: m.clone(),
            matrix: m,
        }
    }

    pub fn custom(matrix: Matrix) -> Result<Self, MechanicsError> {
        if matrix.rows() != 2 || matrix.cols() != 2 || !matrix.is_symmetric() {
            return Err(MechanicsError::BadMetric);
        }
        let inverse = matrix.inverse().ok_or(MechanicsError::BadMetric)?;
        Ok(Metric {
            kind: MetricKind::Custom,
            matrix,
            inverse,
        })
    }

    pub fn of_kind(kind: MetricKind) -> Option<Self> {
        match kind {
            MetricKind::Euclidean => Some(Metric::euclidean()),
            MetricKind::Hyperbolic => Some(Metric::hyperbolic()),
            MetricKind::SForm => Some(Metric::s_form()),
            MetricKind::Custom => None,
        }
    }

    pub fn kind(&self) -> MetricKind {
        self.kind
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn inverse(&self) -> &Matrix {
        &self.inverse
    }

    pub fn matrix_f64(&self) -> [[f64; 2]; 2] {
        to_2x2(&self.matrix)
    }

    pub fn inverse_f64(&self) -> [[f64; 2]; 2] {
        to_2x2(&self.inverse)
    }
}

fn to_2x2(m: &Matrix) -> [[f64; 2]; 2] {
    [
        [rational_to_f64(&m[(0, 0)]), rational_to_f64(&m[(0, 1)])],
        [rational_to_f64(&m[(1, 0)]), rational_to_f64(&m[(1, 1)])],
    ]
}

fn apply_2x2(g: &[[f64; 2]; 2], v: [f64; 2]) -> [f64; 2] {
    [
        g[0][0] * v[0] + g[0][1] * v[1],
        g[1][0] * v[0] + g[1][1] * v[1],
    ]
}

fn quadratic_2x2(g: &[[f64; 2]; 2], v: [f64; 2], w: [f64; 2]) -> f64 {
    v[0] * (g[0][0] * w[0] + g[0][1] * w[1]) + v[1] * (g[1][0] * w[0] + g[1][1] * w[1])
}

/// The symplectic form on dualized phase space: `[[0, g^-1], [-g^-1, 0]]`
/// over coordinates `(x_1, x_2, p_1, p_2)`. Antisymmetric and
/// nondegenerate by construction. For the three named metrics `g^-1 = g`,
/// so the blocks coincide with the metric itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticForm {
    matrix: Matrix,
}

impl SymplecticForm {
    pub fn from_metric(metric: &Metric) -> Self {
        let z = Matrix::zeros(2, 2);
        let inv = metric.inverse();
        let matrix = Matrix::from_blocks(&z, inv, &inv.neg(), &z);
        debug_assert!(matrix.is_antisymmetric());
        debug_assert!(!matrix.det().is_zero());
        SymplecticForm { matrix }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn to_f64(&self) -> [[f64; 4]; 4] {
        let mut out = [[0.0; 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = rational_to_f64(&self.matrix[(i, j)]);
            }
        }
        out
    }
}

/// Phase-space state in dualized coordinates `(x_i, p_i)` at time `t`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PhasePoint {
    pub x: [f64; 2],
    pub p: [f64; 2],
    pub t: f64,
}

impl PhasePoint {
    pub fn new(x: [f64; 2], p: [f64; 2]) -> Self {
        PhasePoint { x, p, t: 0.0 }
    }

    pub fn at_time(x: [f64; 2], p: [f64; 2], t: f64) -> Self {
        PhasePoint { x, p, t }
    }

    pub fn is_finite(&self) -> bool {
        self.x.iter().chain(self.p.iter()).all(|v| v.is_finite()) && self.t.is_finite()
    }

    /// Phase-space coordinates in the order `(x1, x2, p1, p2)`.
    pub fn coords(&self) -> [f64; 4] {
        [self.x[0], self.x[1], self.p[0], self.p[1]]
    }
}

/// Lowers a contravariant configuration vector: `x_i = g_ij x^j`.
pub fn dualize(metric: &Metric, x_contra: [f64; 2]) -> [f64; 2] {
    apply_2x2(&metric.matrix_f64(), x_contra)
}

/// Raises a dualized configuration vector: `x^i = (g^-1)^ij x_j`.
pub fn undualize(metric: &Metric, x_lower: [f64; 2]) -> [f64; 2] {
    apply_2x2(&metric.inverse_f64(), x_lower)
}

/// Lagrangian `(m/2) g(xdot, xdot) - (m w^2 / 2) g(x, x)` in contravariant
/// coordinates.
pub fn lagrangian_value(
    params: &OscillatorParams,
    metric: &Metric,
    x: [f64; 2],
    xdot: [f64; 2],
) -> f64 {
    let g = metric.matrix_f64();
    let kinetic = 0.5 * params.mass() * quadratic_2x2(&g, xdot, xdot);
    let potential = 0.5 * params.mass() * params.omega().powi(2) * quadratic_2x2(&g, x, x);
    kinetic - potential
}

/// Hamiltonian `(1/2m) g^-1(p, p) + (m w^2 / 2) g^-1(x, x)` in dualized
/// coordinates.
pub fn hamiltonian_value(params: &OscillatorParams, metric: &Metric, point: &PhasePoint) -> f64 {
    let ginv = metric.inverse_f64();
    let kinetic = quadratic_2x2(&ginv, point.p, point.p) / (2.0 * params.mass());
    let potential =
        0.5 * params.mass() * params.omega().powi(2) * quadratic_2x2(&ginv, point.x, point.x);
    kinetic + potential
}

/// Right-hand side of Hamilton's equations in dualized coordinates:
/// metric-independent.
pub fn eom_rhs(params: &OscillatorParams, point: &PhasePoint) -> ([f64; 2], [f64; 2]) {
    let m = params.mass();
    let k = m * params.omega().powi(2);
    (
        [point.p[0] / m, point.p[1] / m],
        [-k * point.x[0], -k * point.x[1]],
    )
}

/// The metric-dependent form of the equations of motion in contravariant
/// coordinates: `dx^i/dt = (1/m)(g^-1)^ij p_j`, `dp_i/dt = -m w^2 g_ij x^j`.
/// Dualizing its configuration output reproduces [`eom_rhs`].
pub fn eom_rhs_contravariant(
    params: &OscillatorParams,
    metric: &Metric,
    x_contra: [f64; 2],
    p: [f64; 2],
) -> ([f64; 2], [f64; 2]) {
    let m = params.mass();
    let k = m * params.omega().powi(2);
    let xdot = apply_2x2(&metric.inverse_f64(), [p[0] / m, p[1] / m]);
    let gx = apply_2x2(&metric.matrix_f64(), x_contra);
    (xdot, [-k * gx[0], -k * gx[1]])
}

/// Closed-form flow of the linear system from `start` by a time offset `t`.
pub fn exact_solution(params: &OscillatorParams, start: &PhasePoint, t: f64) -> PhasePoint {
    let w = params.omega();
    let m = params.mass();
    let (c, s) = ((w * t).cos(), (w * t).sin());
    let mut x = [0.0; 2];
    let mut p = [0.0; 2];
    for i in 0..2 {
        x[i] = start.x[i] * c + start.p[i] * s / (m * w);
        p[i] = start.p[i] * c - m * w * start.x[i] * s;
    }
    PhasePoint::at_time(x, p, start.t + t)
}

/// One Stoermer-Verlet step (half-kick, drift, half-kick) of size `h`.
pub fn verlet_step(params: &OscillatorParams, point: &PhasePoint, h: f64) -> PhasePoint {
    let m = params.mass();
    let k = m * params.omega().powi(2);
    let mut p = [
        point.p[0] - 0.5 * h * k * point.x[0],
        point.p[1] - 0.5 * h * k * point.x[1],
    ];
    let x = [
        point.x[0] + h * p[0] / m,
        point.x[1] + h * p[1] / m,
    ];
    p[0] -= 0.5 * h * k * x[0];
    p[1] -= 0.5 * h * k * x[1];
    PhasePoint::at_time(x, p, point.t + h)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Integrator {
    Exact,
    Verlet,
}

impl fmt::Display for Integrator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Integrator::Exact => "exact",
            Integrator::Verlet => "verlet",
        })
    }
}

/// A sampled trajectory with the parameters and metric that produced it.
#[derive(Debug, Clone)]
pub struct Trajectory {
    samples: Vec<PhasePoint>,
    params: OscillatorParams,
    metric: Metric,
}

impl Trajectory {
    pub fn samples(&self) -> &[PhasePoint] {
        &self.samples
    }

    pub fn params(&self) -> &OscillatorParams {
        &self.params
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }
}

/// Samples the flow at `t = 0, h, 2h, ..., t_end` (the final partial step
/// is included when `t_end` is not a multiple of `h`).
pub fn simulate(
    params: &OscillatorParams,
    metric: &Metric,
    start: &PhasePoint,
    t_end: f64,
    h: f64,
    integrator: Integrator,
) -> Result<Trajectory, MechanicsError> {
    if !(t_end.is_finite() && h.is_finite() && t_end > 0.0 && h > 0.0) {
        return Err(MechanicsError::BadStep);
    }
    if !start.is_finite() {
        return Err(MechanicsError::NonFinite { step: 0 });
    }
    let steps = (t_end / h).floor() as usize;
    let remainder = t_end - steps as f64 * h;
    let mut samples = Vec::with_capacity(steps + 2);
    samples.push(*start);
    let mut current = *start;
    for step in 1..=steps {
        current = match integrator {
            // The closed form is evaluated from the initial point, so the
            // samples carry no accumulated roundoff.
            Integrator::Exact => exact_solution(params, start, step as f64 * h),
            Integrator::Verlet => verlet_step(params, &current, h),
        };
        if !current.is_finite() {
            return Err(MechanicsError::NonFinite { step });
        }
        samples.push(current);
    }
    if remainder > f64::EPSILON * t_end {
        let last = match integrator {
            Integrator::Exact => exact_solution(params, start, t_end),
            Integrator::Verlet => verlet_step(params, &current, remainder),
        };
        if !last.is_finite() {
            return Err(MechanicsError::NonFinite { step: steps + 1 });
        }
        samples.push(last);
    }
    Ok(Trajectory {
        samples,
        params: *params,
        metric: metric.clone(),
    })
}

#[cfg(test)]
fn is_named_self_inverse(metric: &Metric) -> bool {
    // delta, eta, s all square to the identity.
    metric.matrix().mul(metric.matrix()) == Matrix::identity(2)
}
