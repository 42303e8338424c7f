//! Exact s-form geometry, the s-plectic group Ap(n), and classical
//! mechanics of the D=2 isotropic harmonic oscillator over Euclidean,
//! hyperbolic, and s-form configuration metrics.
//!
//! The library is split along the natural seams of the problem:
//!
//! - [`exact`]: arbitrary-precision rational vectors and matrices
//!   (elimination, inverses, inertia) underlying every equality-based check.
//! - [`sform`]: strictly traceless bilinear forms, admissible bases,
//!   orthogonal complements, subspace taxonomy, and exact standardization.
//! - [`ap`]: membership and block conditions for Ap(n), its exact
//!   generator families, and its Lie algebra with a floating-point
//!   exponential.
//! - [`mechanics`]: oscillator dynamics in dualized coordinates, where the
//!   equations of motion are metric-independent; exact and Stoermer-Verlet
//!   integrators.
//! - [`observables`]: the four quadratic integrals of motion, an exact
//!   metric-dependent Poisson bracket, their quadratic identity, structure
//!   constants, and su(2)/su(1,1) classification by Killing signature.
//! - [`poly`]: small exact multivariate polynomials backing the symbolic
//!   identity checks.
//! - [`batch`]: data-parallel sweeps (rayon under the default `parallel`
//!   feature, with sequential fallbacks).
//! - [`io`]: JSON schemas, machine-readable reports, and trajectory export.

#![allow(clippy::needless_range_loop)]

pub mod ap;
pub mod batch;
pub mod exact;
pub mod io;
mod isotropy;
pub mod mechanics;
pub mod observables;
pub mod poly;
pub mod sform;

pub use exact::{Matrix, Rational, Vector};
pub use mechanics::{Metric, MetricKind, OscillatorParams, PhasePoint, Trajectory};
pub use observables::QuadraticObservable;
pub use sform::{BilinearForm, SSpace, Subspace};
