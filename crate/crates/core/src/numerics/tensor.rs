// SPDX-License-Identifier: Apache-2.0

use alloc::format;

use num_complex::Complex64;

use super::{hermitian_eigenvalues, ComplexMatrix};
use crate::error::{Error, Result};
use crate::tol;

/// Checks that `rho` is Hermitian, has unit trace and is positive
/// semidefinite, all within `tol`.
pub fn check_density_matrix(rho: &ComplexMatrix, tol: f64) -> Result<()> {
    if !rho.is_square() {
        return Err(Error::NotDensityMatrix(format!("not square: {}x{}", rho.rows(), rho.cols())));
    }
    let herm = rho.hermiticity_deviation();
    if herm > tol {
        return Err(Error::NotDensityMatrix(format!("hermiticity deviation {herm:e}")));
    }
    let tr = rho.trace();
    if (tr - Complex64::new(1.0, 0.0)).norm() > tol {
        return Err(Error::NotDensityMatrix(format!("trace {tr}")));
    }
    let min = hermitian_eigenvalues(rho)?[0];
    if min < -tol {
        return Err(Error::NotDensityMatrix(format!("negative eigenvalue {min:e}")));
    }
    Ok(())
}

/// Partial trace over the environment weighted by the state `omega`.
///
/// For `y` on `H ⊗ K` (system index major) returns the `H` operator `Z` with
/// `Tr[Z ρ] = Tr[y (ρ ⊗ ω)]`, i.e. `Z(i,j) = Σ_{k,l} ω(l,k) · y((i,k),(j,l))`.
pub fn weighted_partial_trace(y: &ComplexMatrix, omega: &ComplexMatrix) -> Result<ComplexMatrix> {
    let m = omega.rows();
    if !y.is_square() || !omega.is_square() || !y.rows().is_multiple_of(m) {
        return Err(Error::IncompatibleFactorization(format!(
            "{}x{} operator over a {}x{} environment state",
            y.rows(),
            y.cols(),
            omega.rows(),
            omega.cols()
        )));
    }
    check_density_matrix(omega, tol::DEFAULT)?;
    let n = y.rows() / m;
    Ok(ComplexMatrix::from_fn(n, n, |i, j| {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..m {
            for l in 0..m {
                acc += omega[(l, k)] * y[(i * m + k, j * m + l)];
            }
        }
        acc
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::kron;

    #[test]
    fn identity_environment_factor() {
        let a = ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        let y = kron(&a, &ComplexMatrix::identity(3));
        let omega = ComplexMatrix::real_diagonal(&[0.2, 0.3, 0.5]);
        let z = weighted_partial_trace(&y, &omega).unwrap();
        assert!(z.max_abs_diff(&a) < 1e-15);
    }

    #[test]
    fn pure_ground_state_picks_corner() {
        let a = ComplexMatrix::from_real(2, 2, &[1.0, -1.0, 0.5, 2.0]).unwrap();
        let b = ComplexMatrix::from_real(2, 2, &[3.0, 1.0, 7.0, 9.0]).unwrap();
        let omega = ComplexMatrix::real_diagonal(&[1.0, 0.0]);
        let z = weighted_partial_trace(&kron(&a, &b), &omega).unwrap();
        assert!(z.max_abs_diff(&a.scale_real(3.0)) < 1e-15);
    }

    #[test]
    fn swap_traces_to_omega() {
        // swap |j,l> -> |l,j>, so swap((i,k),(j,l)) = δ_il δ_kj and Z = ω
        let mut swap = ComplexMatrix::zeros(4, 4);
        for j in 0..2 {
            for l in 0..2 {
                swap[(l * 2 + j, j * 2 + l)] = Complex64::new(1.0, 0.0);
            }
        }
        let omega = ComplexMatrix::real_diagonal(&[0.3, 0.7]);
        let z = weighted_partial_trace(&swap, &omega).unwrap();
        let expected = ComplexMatrix::real_diagonal(&[0.3, 0.7]);
        assert!(z.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn mismatched_dimensions() {
        let y = ComplexMatrix::identity(5);
        let omega = ComplexMatrix::real_diagonal(&[0.5, 0.5]);
        assert!(matches!(weighted_partial_trace(&y, &omega), Err(Error::IncompatibleFactorization(_))));
    }

    #[test]
    fn rejects_non_states() {
        let y = ComplexMatrix::identity(4);
        let not_normalized = ComplexMatrix::real_diagonal(&[0.5, 0.6]);
        assert!(weighted_partial_trace(&y, &not_normalized).is_err());
        let negative = ComplexMatrix::real_diagonal(&[1.5, -0.5]);
        assert!(weighted_partial_trace(&y, &negative).is_err());
    }
}
