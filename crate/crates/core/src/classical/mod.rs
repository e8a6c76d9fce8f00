// SPDX-License-Identifier: Apache-2.0

//! Classical side: stochastic matrices, deterministic mixtures, invertible
//! dilations and Birkhoff–von Neumann decompositions.

mod bijection;
mod birkhoff;
mod dilation;
mod mixture;
mod stochastic;

pub use bijection::{complete_to_bijection, FiniteBijection};
pub use birkhoff::{birkhoff_decompose, BirkhoffDecomposition};
pub use dilation::{build_dilation, build_dilation_from_mixture, dilation_restriction, Dilation};
pub use mixture::{deterministic_mixture_decompose, DeterministicMixture};
pub use stochastic::{validate_stochastic, StochasticMatrix};
