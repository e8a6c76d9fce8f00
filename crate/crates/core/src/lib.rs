// SPDX-License-Identifier: Apache-2.0

//! Quantum extensions of finite-state classical Markov chains.
//!
//! The pipeline runs in four stages:
//!
//! - [`classical`]: validate a stochastic matrix `Q`, split it into a mixture
//!   of deterministic maps, and build an invertible dynamical system `T` on
//!   `E × F` together with an environment law `ν` whose average reproduces `Q`.
//! - [`qext`]: lift `T` to a permutation unitary, trace out the environment to
//!   get a completely positive map, and classify CP maps as subclassical,
//!   doubly, measurement or purely subclassical.
//! - [`trajectories`]: the unistochastic matrix `R` of a system/environment
//!   unitary, the one-step trajectory law and its sampling, and the two
//!   two-qubit example systems.
//! - [`numerics`]: the dense complex kernel everything above runs on.
//!
//! Tensor layout is fixed crate-wide: the system index is the slow (major)
//! index and the environment index the fast one, so `|x, y⟩` sits at flat
//! position `x · dim_env + y`.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod classical;
pub mod error;
pub mod numerics;
pub mod qext;
pub mod tol;
pub mod trajectories;

pub use error::{Error, Result};
pub use num_complex::Complex64;
