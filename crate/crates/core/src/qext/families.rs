// SPDX-License-Identifier: Apache-2.0

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent float methods need std
use num_traits::Float;

use super::CPMap;
use crate::classical::StochasticMatrix;
use crate::error::{Error, Result};
use crate::numerics::{basis_op, matexp, ComplexMatrix, RealMatrix};
use crate::tol;

/// Von Neumann measurement `𝓜(X) = Σ_k ⟨k|X|k⟩ |k⟩⟨k|`.
pub fn vn_measurement(n: usize) -> CPMap {
    CPMap::from_kraus((0..n).map(|k| basis_op(n, k, k)).collect()).expect("n >= 1")
}

/// `Φ[Q](X) = Σ_{i,j} Q_{i,j} ⟨j|X|j⟩ |i⟩⟨i|`, the purely subclassical map
/// with restriction `Q`.
pub fn phi_of_q(q: &StochasticMatrix) -> CPMap {
    phi_kraus(q.matrix(), Vec::new())
}

// Kraus √M_{ij} |j⟩⟨i| for every positive entry of a nonnegative M
fn phi_kraus(m: &RealMatrix, mut kraus: Vec<ComplexMatrix>) -> CPMap {
    let n = m.n();
    for i in 0..n {
        for j in 0..n {
            let w = m[(i, j)];
            if w > 0.0 {
                let mut k = ComplexMatrix::zeros(n, n);
                k[(j, i)] = Complex64::new(w.sqrt(), 0.0);
                kraus.push(k);
            }
        }
    }
    if kraus.is_empty() {
        kraus.push(ComplexMatrix::zeros(n, n));
    }
    CPMap::from_kraus(kraus).expect("square Kraus family")
}

/// Kraus family `M_k = Σ_l √Q_{k,l} |l⟩⟨k|`.
pub fn mk_kraus_from_q(q: &StochasticMatrix) -> CPMap {
    let n = q.n();
    let kraus = (0..n)
        .map(|k| {
            let mut mk = ComplexMatrix::zeros(n, n);
            for l in 0..n {
                mk[(l, k)] = Complex64::new(q[(k, l)].sqrt(), 0.0);
            }
            mk
        })
        .collect();
    CPMap::from_kraus(kraus).expect("square Kraus family")
}

/// `𝓛(X) = 𝓜[U* X U]`, restriction `Q_{i,j} = |⟨j|U|i⟩|²`.
pub fn measurement_from_unitary(u: &ComplexMatrix) -> Result<CPMap> {
    u.require_unitary(tol::DEFAULT)?;
    let n = u.rows();
    CPMap::from_kraus((0..n).map(|k| u.matmul(&basis_op(n, k, k))).collect())
}

/// Checks zero row sums (within `1e-10`) and nonnegative off-diagonal rates.
pub fn validate_generator(b: &RealMatrix) -> Result<()> {
    let n = b.n();
    for i in 0..n {
        let sum: f64 = b.row(i).iter().sum();
        if sum.abs() > tol::ROW_SUM {
            return Err(Error::NotMarkovGenerator(format!("row {i} sums to {sum}")));
        }
        for j in 0..n {
            if i != j && b[(i, j)] < -tol::NEGATIVE_CLAMP {
                return Err(Error::NotMarkovGenerator(format!("negative rate {} at ({i}, {j})", b[(i, j)])));
            }
        }
    }
    Ok(())
}

/// Generic quantum Markov semigroup at time `t` for the classical generator
/// `b`: diagonals evolve by `P_t = e^{tB}` and `|i⟩⟨j|` decays by
/// `exp(t(B_ii + B_jj)/2)`.
///
/// Built as `Φ[P_t − e^{tB_d}](X) + D X D` with `D = diag(e^{tB_ii/2})`;
/// `P_t ≥ e^{tB_d}` entrywise for a Markov generator, so the first term is CP.
pub fn generic_qms(b: &RealMatrix, t: f64) -> Result<CPMap> {
    validate_generator(b)?;
    if !t.is_finite() || t < 0.0 {
        return Err(Error::NotMarkovGenerator(format!("time must be nonnegative, got {t}")));
    }
    let n = b.n();
    let gen = ComplexMatrix::from_real(n, n, b.entries())?;
    let p = matexp(&gen, t);
    let jump = RealMatrix::from_fn(n, |i, j| {
        let w = p[(i, j)].re - if i == j { (t * b[(i, i)]).exp() } else { 0.0 };
        if w.abs() <= tol::NEGATIVE_CLAMP {
            0.0
        } else {
            w
        }
    });
    if let Some(k) = jump.entries().iter().position(|&w| w < 0.0) {
        return Err(Error::NotMarkovGenerator(format!(
            "jump weight {} at ({}, {}) is negative",
            jump.entries()[k],
            k / n,
            k % n
        )));
    }
    let damping: Vec<Complex64> = (0..n).map(|i| Complex64::new((0.5 * t * b[(i, i)]).exp(), 0.0)).collect();
    Ok(phi_kraus(&jump, alloc::vec![ComplexMatrix::diagonal(&damping)]))
}
