// SPDX-License-Identifier: Apache-2.0

//! Dense complex linear algebra sized for a few hundred dimensions at most.

mod eigen;
mod expm;
mod matrix;
mod prob;
mod real;
mod tensor;

pub use eigen::{hermitian_eigenvalues, hermitian_spectral_terms};
pub use expm::matexp;
pub use matrix::{basis_op, kron, ComplexMatrix};
pub use prob::ProbabilityVector;
pub use real::RealMatrix;
pub use tensor::{check_density_matrix, weighted_partial_trace};
