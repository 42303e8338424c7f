//! Data-parallel batch operations over the exact kernels.
//!
//! Membership sweeps, per-sample observable evaluation, and simulation
//! fan-out are embarrassingly parallel: every element is pure and owns its
//! state. With the `parallel` feature (default) these run on rayon; the
//! `*_seq` variants are always available as the sequential reference path
//! and are what the plain functions fall back to when the feature is off.
//! Outputs are order-preserving and identical across both paths.

use crate::ap::{check_block_conditions, BlockConditions};
use crate::exact::{Matrix, Rational};
use crate::mechanics::{
    simulate, Integrator, MechanicsError, Metric, OscillatorParams, PhasePoint, Trajectory,
};
use crate::observables::QuadraticObservable;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Full membership verdict for one candidate matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipReport {
    pub member: bool,
    pub conditions: BlockConditions,
    pub det: Rational,
}

fn check_one(matrix: &Matrix, n: usize) -> MembershipReport {
    let conditions = check_block_conditions(matrix, n).expect("batch inputs must be 2n x 2n");
    MembershipReport {
        member: conditions.all_hold(),
        conditions,
        det: matrix.det(),
    }
}

/// Membership verdicts for a batch of 2n x 2n matrices.
/// Panics if any matrix has the wrong shape.
pub fn check_members(matrices: &[Matrix], n: usize) -> Vec<MembershipReport> {
    #[cfg(feature = "parallel")]
    {
        matrices.par_iter().map(|m| check_one(m, n)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        check_members_seq(matrices, n)
    }
}

pub fn check_members_seq(matrices: &[Matrix], n: usize) -> Vec<MembershipReport> {
    matrices.iter().map(|m| check_one(m, n)).collect()
}

fn evaluate_sample(point: &crate::mechanics::PhasePoint, grams: &[[[f64; 4]; 4]]) -> Vec<f64> {
    let z = point.coords();
    grams
        .iter()
        .map(|g| {
            let mut acc = 0.0;
            for i in 0..4 {
                for j in 0..4 {
                    acc += z[i] * g[i][j] * z[j];
                }
            }
            acc
        })
        .collect()
}

fn gram_tables(observables: &[QuadraticObservable]) -> Vec<[[f64; 4]; 4]> {
    observables
        .iter()
        .map(|o| {
            let m = o.gram().to_f64();
            let mut g = [[0.0; 4]; 4];
            for i in 0..4 {
                for j in 0..4 {
                    g[i][j] = m[i][j];
                }
            }
            g
        })
        .collect()
}

/// Values of each observable at every trajectory sample; one row per
/// sample, one column per observable. Gram matrices are converted to f64
/// once up front.
pub fn evaluate_along(trajectory: &Trajectory, observables: &[QuadraticObservable]) -> Vec<Vec<f64>> {
    let grams = gram_tables(observables);
    #[cfg(feature = "parallel")]
    {
        trajectory
            .samples()
            .par_iter()
            .map(|p| evaluate_sample(p, &grams))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        trajectory
            .samples()
            .iter()
            .map(|p| evaluate_sample(p, &grams))
            .collect()
    }
}

pub fn evaluate_along_seq(
    trajectory: &Trajectory,
    observables: &[QuadraticObservable],
) -> Vec<Vec<f64>> {
    let grams = gram_tables(observables);
    trajectory
        .samples()
        .iter()
        .map(|p| evaluate_sample(p, &grams))
        .collect()
}

/// One simulation request in a parameter sweep.
#[derive(Debug, Clone)]
pub struct SimSpec {
    pub params: OscillatorParams,
    pub metric: Metric,
    pub start: PhasePoint,
    pub t_end: f64,
    pub step: f64,
    pub integrator: Integrator,
}

fn run_one(spec: &SimSpec) -> Result<Trajectory, MechanicsError> {
    simulate(
        &spec.params,
        &spec.metric,
        &spec.start,
        spec.t_end,
        spec.step,
        spec.integrator,
    )
}

/// Runs a batch of independent simulations; each worker owns its state.
pub fn simulate_many(specs: &[SimSpec]) -> Vec<Result<Trajectory, MechanicsError>> {
    #[cfg(feature = "parallel")]
    {
        specs.par_iter().map(run_one).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        simulate_many_seq(specs)
    }
}

pub fn simulate_many_seq(specs: &[SimSpec]) -> Vec<Result<Trajectory, MechanicsError>> {
    specs.iter().map(run_one).collect()
}
