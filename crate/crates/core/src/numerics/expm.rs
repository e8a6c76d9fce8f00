// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex64;
#[allow(unused_imports)] // inherent float methods need std
use num_traits::Float;

use super::ComplexMatrix;

const MAX_TAYLOR_TERMS: usize = 40;
// scaled operand norm bound; 0.5^18/18! is far below f64 epsilon
const SCALED_NORM: f64 = 0.5;

/// `e^{t·a}` by scaling and squaring with a truncated Taylor series.
///
/// Panics if `a` is not square.
pub fn matexp(a: &ComplexMatrix, t: f64) -> ComplexMatrix {
    assert!(a.is_square(), "matexp of a {}x{} matrix", a.rows(), a.cols());
    let n = a.rows();
    let scaled = a.scale_real(t);
    let norm = scaled.one_norm();
    if norm == 0.0 {
        return ComplexMatrix::identity(n);
    }
    let squarings = if norm > SCALED_NORM { (norm / SCALED_NORM).log2().ceil() as i32 } else { 0 };
    let m = scaled.scale_real(2.0_f64.powi(-squarings));

    let mut result = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    for k in 1..=MAX_TAYLOR_TERMS {
        term = term.matmul(&m).scale(Complex64::new(1.0 / k as f64, 0.0));
        result = &result + &term;
        if term.max_abs() <= f64::EPSILON * 1e-2 * result.max_abs() {
            break;
        }
    }
    for _ in 0..squarings {
        result = result.matmul(&result);
    }
    result
}
