// SPDX-License-Identifier: Apache-2.0

//! One-step system/environment interactions: the unistochastic matrix `R`,
//! the trajectory law and its sampling, and the two-qubit example systems.

mod bipartite;
mod sampling;
mod systems;

pub use bipartite::{
    determinism_check, is_deterministic_r, kraus_law, marginal_law, r_from_unitary, trace_identity_check,
    BipartiteUnitary, DeterminismReport, TraceIdentityReport,
};
pub use sampling::{
    outcome_uniform, run_one_step_batch, run_trajectory, sample_outcome, trajectory_step, TrajectoryState,
};
pub use systems::{
    spin, spin_closed_form_unitary, spin_coefficients, spontaneous_emission,
    spontaneous_emission_closed_form_unitary, ExampleSystem, SpinCoefficients, MIDDLE_SWAP,
    SPIN_PERMUTATIONS,
};
