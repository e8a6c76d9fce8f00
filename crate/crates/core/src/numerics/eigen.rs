// SPDX-License-Identifier: Apache-2.0

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // inherent float methods need std
use num_traits::Float;

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{Error, Result};
use crate::tol;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues of a Hermitian matrix in ascending order.
///
/// `H = A + iB` is embedded as the real symmetric `[[A, -B], [B, A]]`, whose
/// spectrum is that of `H` with every eigenvalue doubled; cyclic Jacobi
/// rotations diagonalize the embedding.
pub fn hermitian_eigenvalues(a: &ComplexMatrix) -> Result<Vec<f64>> {
    let (s, m) = real_embedding(a)?;
    let mut s = s;
    let mut doubled = symmetric_jacobi(&mut s, m, None);
    doubled.sort_by(|x, y| x.total_cmp(y));
    Ok(doubled.chunks(2).map(|p| 0.5 * (p[0] + p[1])).collect())
}

/// Rank-one terms `(λ, w)` with `H = Σ λ w w*`, one per eigenvector of the
/// real embedding. Each eigenvalue of `H` appears twice, so the family is
/// overcomplete (the `w` are scaled by `1/√2`) but exact.
pub fn hermitian_spectral_terms(a: &ComplexMatrix) -> Result<Vec<(f64, Vec<Complex64>)>> {
    let (mut s, m) = real_embedding(a)?;
    let n = a.rows();
    let mut v = vec![0.0; m * m];
    let values = symmetric_jacobi(&mut s, m, Some(&mut v));
    let half = core::f64::consts::FRAC_1_SQRT_2;
    Ok(values
        .into_iter()
        .enumerate()
        .map(|(r, lambda)| {
            let w = (0..n).map(|i| Complex64::new(v[i * m + r], v[(i + n) * m + r]) * half).collect();
            (lambda, w)
        })
        .collect())
}

fn real_embedding(a: &ComplexMatrix) -> Result<(Vec<f64>, usize)> {
    if !a.is_square() {
        return Err(Error::NotHermitian { deviation: f64::INFINITY });
    }
    let scale = a.max_abs().max(1.0);
    let deviation = a.hermiticity_deviation();
    if deviation > tol::DEFAULT * scale {
        return Err(Error::NotHermitian { deviation });
    }
    let n = a.rows();
    let m = 2 * n;
    let mut s = vec![0.0; m * m];
    for i in 0..n {
        for j in 0..n {
            // symmetrize so tiny anti-Hermitian noise cannot break the embedding
            let z = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
            s[i * m + j] = z.re;
            s[(i + n) * m + (j + n)] = z.re;
            s[i * m + (j + n)] = -z.im;
            s[(i + n) * m + j] = z.im;
        }
    }
    Ok((s, m))
}

/// Cyclic Jacobi on the symmetric row-major `s` of size `n`. Returns the
/// unsorted diagonal; `vectors`, when given, accumulates the rotations
/// column-wise so that `s_in · V = V · diag`.
fn symmetric_jacobi(s: &mut [f64], n: usize, mut vectors: Option<&mut [f64]>) -> Vec<f64> {
    if let Some(v) = vectors.as_deref_mut() {
        v.iter_mut().for_each(|x| *x = 0.0);
        for i in 0..n {
            v[i * n + i] = 1.0;
        }
    }
    let total: f64 = s.iter().map(|x| x * x).sum();
    let threshold = total * f64::EPSILON * f64::EPSILON;
    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += s[p * n + q] * s[p * n + q];
            }
        }
        if off <= threshold || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = s[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (s[q * n + q] - s[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * c;
                for k in 0..n {
                    let akp = s[k * n + p];
                    let akq = s[k * n + q];
                    s[k * n + p] = c * akp - sn * akq;
                    s[k * n + q] = sn * akp + c * akq;
                }
                for k in 0..n {
                    let apk = s[p * n + k];
                    let aqk = s[q * n + k];
                    s[p * n + k] = c * apk - sn * aqk;
                    s[q * n + k] = sn * apk + c * aqk;
                }
                s[p * n + q] = 0.0;
                s[q * n + p] = 0.0;
                if let Some(v) = vectors.as_deref_mut() {
                    for k in 0..n {
                        let vkp = v[k * n + p];
                        let vkq = v[k * n + q];
                        v[k * n + p] = c * vkp - sn * vkq;
                        v[k * n + q] = sn * vkp + c * vkq;
                    }
                }
            }
        }
    }
    (0..n).map(|i| s[i * n + i]).collect()
}
