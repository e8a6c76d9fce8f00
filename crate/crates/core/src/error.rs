// SPDX-License-Identifier: Apache-2.0

use alloc::string::String;
use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("incompatible tensor factorization: {0}")]
    IncompatibleFactorization(String),
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("not unitary (max deviation of U*U from I: {deviation:e})")]
    NotUnitary { deviation: f64 },
    #[error("not a density matrix: {0}")]
    NotDensityMatrix(String),
    #[error("not a probability vector: {0}")]
    NotProbabilityVector(String),
    #[error("not stochastic: row {row}: {detail}")]
    NotStochastic { row: usize, detail: String },
    #[error("not doubly stochastic (max line-sum deviation {deviation:e})")]
    NotDoublyStochastic { deviation: f64 },
    #[error("decomposition stalled with residual {residual:e}")]
    DecompositionStalled { residual: f64 },
    #[error("not a bijection: {0}")]
    NotBijective(String),
    #[error("not a gauge: |g[{index}]| = {modulus}")]
    NotAGauge { index: usize, modulus: f64 },
    #[error("not subclassical (diagonal to off-diagonal leakage {leakage:e})")]
    NotSubclassical { leakage: f64 },
    #[error("not a Markov generator: {0}")]
    NotMarkovGenerator(String),
    #[error("environment state must be the point mass at 0")]
    EnvironmentNotGround,
    #[error("not completely positive: Choi minimum eigenvalue {min_eigenvalue:e}")]
    NotCompletelyPositive { min_eigenvalue: f64 },
}
