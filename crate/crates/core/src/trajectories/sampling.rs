// SPDX-License-Identifier: Apache-2.0

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::{kraus_law, BipartiteUnitary};
use crate::error::Result;
use crate::numerics::{check_density_matrix, ComplexMatrix};
use crate::tol;

/// System state along a quantum trajectory.
#[derive(Clone, Debug, PartialEq)]
pub struct TrajectoryState {
    pub rho: ComplexMatrix,
    pub step: u64,
    pub rng_seed: u64,
    /// Observed environment outcome per step.
    pub history: Vec<usize>,
}

impl TrajectoryState {
    pub fn new(rho: ComplexMatrix, rng_seed: u64) -> Result<Self> {
        check_density_matrix(&rho, tol::DEFAULT)?;
        Ok(Self { rho, step: 0, rng_seed, history: Vec::new() })
    }
}

/// Uniform draw in `[0, 1)` from ChaCha8 seeded with `seed` on stream `step`.
pub fn outcome_uniform(seed: u64, step: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(step);
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Inverse CDF over outcomes in index order, skipping `p ≤ 1e-14`.
/// `None` when no outcome is eligible.
pub fn sample_outcome(p: &[f64], u: f64) -> Option<usize> {
    let eligible = |w: f64| w > tol::DEGENERATE_OUTCOME;
    let total: f64 = p.iter().copied().filter(|&w| eligible(w)).sum();
    let target = u * total;
    let mut acc = 0.0;
    let mut last = None;
    for (y, &w) in p.iter().enumerate() {
        if !eligible(w) {
            continue;
        }
        acc += w;
        last = Some(y);
        if target < acc {
            return Some(y);
        }
    }
    last
}

/// One interaction with a fresh environment in `|0⟩`, followed by a
/// measurement of the environment in its canonical basis.
pub fn trajectory_step(bu: &BipartiteUnitary, s: &TrajectoryState) -> Result<TrajectoryState> {
    check_density_matrix(&s.rho, tol::DEFAULT)?;
    let p = kraus_law(bu, &s.rho)?;
    let y = sample_outcome(&p, outcome_uniform(s.rng_seed, s.step))
        .expect("a trace-one state has an outcome of positive probability");
    let my = bu.block(y, 0);
    let rho = my.matmul(&s.rho).matmul(&my.adjoint()).scale(Complex64::new(1.0 / p[y], 0.0));
    let mut history = s.history.clone();
    history.push(y);
    Ok(TrajectoryState { rho, step: s.step + 1, rng_seed: s.rng_seed, history })
}

/// `steps` repeated interactions from `rho0`.
pub fn run_trajectory(
    bu: &BipartiteUnitary,
    rho0: ComplexMatrix,
    steps: u64,
    seed: u64,
) -> Result<TrajectoryState> {
    let mut s = TrajectoryState::new(rho0, seed)?;
    for _ in 0..steps {
        s = trajectory_step(bu, &s)?;
    }
    Ok(s)
}

/// Outcome counts of `count` independent one-step trajectories; trajectory
/// `i` uses seed `seed ^ i`.
pub fn run_one_step_batch(
    bu: &BipartiteUnitary,
    rho0: &ComplexMatrix,
    count: u64,
    seed: u64,
) -> Result<Vec<u64>> {
    check_density_matrix(rho0, tol::DEFAULT)?;
    // every trajectory starts from the same state, so the law is shared
    let p = kraus_law(bu, rho0)?;
    let mut counts = vec![0u64; bu.env_dim()];
    for i in 0..count {
        if let Some(y) = sample_outcome(&p, outcome_uniform(seed ^ i, 0)) {
            counts[y] += 1;
        }
    }
    Ok(counts)
}
