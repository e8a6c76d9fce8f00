// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex64;

use crate::classical::FiniteBijection;
use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;
use crate::tol;

/// 0/1 unitary with `U e_a = e_{T(a)}`, hence `U* M_f U = M_{f∘T}`.
///
/// A non-invertible map has no such extension; that case is rejected when the
/// [`FiniteBijection`] is built.
pub fn permutation_unitary(t: &FiniteBijection) -> ComplexMatrix {
    let size = t.len();
    let mut u = ComplexMatrix::zeros(size, size);
    for (a, &b) in t.forward().iter().enumerate() {
        u[(b, a)] = Complex64::new(1.0, 0.0);
    }
    u
}

/// `V = diag(g) · U`. Conjugation by `V` agrees with conjugation by `U` on
/// every diagonal operator.
pub fn gauge_extension(u: &ComplexMatrix, g: &[Complex64]) -> Result<ComplexMatrix> {
    u.require_unitary(tol::DEFAULT)?;
    if g.len() != u.rows() {
        return Err(Error::DimensionMismatch(alloc::format!(
            "{} phases for a {}-dimensional unitary",
            g.len(),
            u.rows()
        )));
    }
    if let Some((index, z)) = g.iter().enumerate().find(|(_, z)| (z.norm() - 1.0).abs() > tol::GAUGE) {
        return Err(Error::NotAGauge { index, modulus: z.norm() });
    }
    Ok(ComplexMatrix::diagonal(g).matmul(u))
}
