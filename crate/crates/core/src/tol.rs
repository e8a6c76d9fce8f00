// SPDX-License-Identifier: Apache-2.0

//! Default numerical thresholds.

/// Generic comparison tolerance (hermiticity, unitarity, density matrices).
pub const DEFAULT: f64 = 1e-10;
/// Allowed row-sum error of a stochastic matrix.
pub const ROW_SUM: f64 = 1e-10;
/// Entries in `[-NEGATIVE_CLAMP, 0)` are clamped to zero.
pub const NEGATIVE_CLAMP: f64 = 1e-12;
/// Sum tolerance of a probability vector.
pub const PROBABILITY_SUM: f64 = 1e-12;
/// Support threshold in the greedy and Birkhoff decompositions.
pub const SUPPORT: f64 = 1e-12;
/// Line-sum tolerance for doubly stochastic input.
pub const DOUBLY_STOCHASTIC: f64 = 1e-9;
/// Birkhoff stops once the residual max entry is below this.
pub const BIRKHOFF_RESIDUAL: f64 = 1e-9;
/// Block-norm threshold used by classification.
pub const CLASSIFY: f64 = 1e-9;
/// Leakage above this makes `classical_restriction` fail.
pub const LEAKAGE: f64 = 1e-8;
/// Unit-modulus tolerance for gauge phases.
pub const GAUGE: f64 = 1e-12;
/// Kraus blocks with max-entry norm at or below this are dropped.
pub const KRAUS_DROP: f64 = 1e-14;
/// Trajectory outcomes with probability at or below this are never drawn.
pub const DEGENERATE_OUTCOME: f64 = 1e-14;
