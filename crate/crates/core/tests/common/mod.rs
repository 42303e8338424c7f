//! Shared helpers for the integration and acceptance suites: seeded RNG
//! plumbing and random exact-matrix generators.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use splectic::exact::{rat, ratio, Matrix, Rational};

/// Honors `SPLECTIC_SEED` for reproducible fuzzing; the default keeps CI
/// deterministic.
pub fn seeded_rng() -> ChaCha8Rng {
    let seed = std::env::var("SPLECTIC_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0x5eed_u64);
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.random_range(-4..=4), rng.random_range(1..=3))
}

pub fn nonzero_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let r = random_rational(rng);
        if !num_traits::Zero::is_zero(&r) {
            return r;
        }
    }
}

pub fn random_matrix(rng: &mut ChaCha8Rng, dim: usize) -> Matrix {
    Matrix::from_fn(dim, dim, |_, _| random_rational(rng))
}

pub fn random_invertible(rng: &mut ChaCha8Rng, dim: usize) -> Matrix {
    loop {
        let m = random_matrix(rng, dim);
        if !num_traits::Zero::is_zero(&m.det()) {
            return m;
        }
    }
}

/// Random invertible matrix assembled from integer shears, transpositions,
/// sign flips, and occasional small rational scalings. Entry growth stays
/// moderate, which keeps exact arithmetic fast in large sweeps.
pub fn random_structured_invertible(rng: &mut ChaCha8Rng, dim: usize) -> Matrix {
    let mut m = Matrix::identity(dim);
    let ops = rng.random_range(6..=14);
    for _ in 0..ops {
        let kind = rng.random_range(0..4);
        let i = rng.random_range(0..dim);
        let mut j = rng.random_range(0..dim);
        while j == i {
            j = rng.random_range(0..dim);
        }
        let e = match kind {
            // Shear: row_i += c * row_j.
            0 | 1 => {
                let mut e = Matrix::identity(dim);
                e[(i, j)] = rat(rng.random_range(-3..=3));
                e
            }
            // Transposition.
            2 => {
                let mut e = Matrix::identity(dim);
                e[(i, i)] = rat(0);
                e[(j, j)] = rat(0);
                e[(i, j)] = rat(1);
                e[(j, i)] = rat(1);
                e
            }
            // Scaling by a small nonzero rational.
            _ => {
                let mut e = Matrix::identity(dim);
                e[(i, i)] = nonzero_rational(rng);
                e
            }
        };
        m = m.mul(&e);
    }
    debug_assert!(!num_traits::Zero::is_zero(&m.det()));
    m
}
