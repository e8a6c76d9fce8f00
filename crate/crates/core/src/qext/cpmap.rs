// SPDX-License-Identifier: Apache-2.0

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent float methods need std
use num_traits::Float;

use crate::error::{Error, Result};
use crate::numerics::{hermitian_eigenvalues, hermitian_spectral_terms, ComplexMatrix};
use crate::tol;

/// Completely positive map stored as a Kraus family, with its Choi matrix
/// `J = Σ_{i,j} 𝓛(|i⟩⟨j|) ⊗ |i⟩⟨j|` computed on construction.
#[derive(Clone, Debug, PartialEq)]
pub struct CPMap {
    dim: usize,
    kraus: Vec<ComplexMatrix>,
    choi: ComplexMatrix,
}

impl CPMap {
    /// Fails on an empty family or operators that are not all `n×n`.
    pub fn from_kraus(kraus: Vec<ComplexMatrix>) -> Result<Self> {
        let first = kraus.first().ok_or_else(|| Error::DimensionMismatch("empty Kraus family".into()))?;
        let dim = first.rows();
        for (a, k) in kraus.iter().enumerate() {
            if k.rows() != dim || k.cols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "Kraus operator {a} is {}x{}, expected {dim}x{dim}",
                    k.rows(),
                    k.cols()
                )));
            }
        }
        let choi = choi_of(dim, &kraus);
        Ok(Self { dim, kraus, choi })
    }

    /// Kraus family read off the spectral decomposition of a Choi matrix on
    /// `dim ⊗ dim`. Eigenvalues below `-cp_tol` are rejected; the remaining
    /// non-positive ones are dropped.
    pub fn from_choi(dim: usize, choi: &ComplexMatrix, cp_tol: f64) -> Result<Self> {
        if dim == 0 || choi.rows() != dim * dim || choi.cols() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} Choi matrix for dimension {dim}",
                choi.rows(),
                choi.cols()
            )));
        }
        let min_eigenvalue = hermitian_eigenvalues(choi)?[0];
        if min_eigenvalue < -cp_tol {
            return Err(Error::NotCompletelyPositive { min_eigenvalue });
        }
        let floor = tol::KRAUS_DROP * choi.max_abs().max(1.0);
        let kraus: Vec<ComplexMatrix> = hermitian_spectral_terms(choi)?
            .into_iter()
            .filter(|(lambda, _)| *lambda > floor)
            .map(|(lambda, w)| {
                let s = lambda.sqrt();
                // J[(a,i),(b,j)] = Σ conj(K[i,a]) K[j,b]
                ComplexMatrix::from_fn(dim, dim, |i, a| w[a * dim + i].conj() * s)
            })
            .collect();
        if kraus.is_empty() {
            return Self::from_kraus(alloc::vec![ComplexMatrix::zeros(dim, dim)]);
        }
        Self::from_kraus(kraus)
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_kraus(alloc::vec![ComplexMatrix::identity(dim)]).expect("square")
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    #[inline]
    pub fn choi(&self) -> &ComplexMatrix {
        &self.choi
    }

    /// `𝓛(X) = Σ K* X K`.
    pub fn apply(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        for k in &self.kraus {
            out = &out + &k.conjugate_by(x);
        }
        out
    }

    /// `𝓛_*(ρ) = Σ K ρ K*`.
    pub fn apply_predual(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        for k in &self.kraus {
            out = &out + &k.matmul(rho).matmul(&k.adjoint());
        }
        out
    }

    /// `𝓛(|i⟩⟨j|)`, read off the Choi matrix.
    pub fn basis_image(&self, i: usize, j: usize) -> ComplexMatrix {
        let n = self.dim;
        ComplexMatrix::from_fn(n, n, |a, b| self.choi[(a * n + i, b * n + j)])
    }

    /// `max |𝓛(I) − I|`.
    pub fn unitality_deviation(&self) -> f64 {
        let mut sum = ComplexMatrix::zeros(self.dim, self.dim);
        for k in &self.kraus {
            sum = &sum + &k.adjoint().matmul(k);
        }
        sum.max_abs_diff(&ComplexMatrix::identity(self.dim))
    }

    pub fn is_unital(&self, tol: f64) -> bool {
        self.unitality_deviation() <= tol
    }

    pub fn choi_min_eigenvalue(&self) -> f64 {
        // the Choi matrix of a Kraus family is Hermitian by construction
        hermitian_eigenvalues(&self.choi).expect("Choi matrix is Hermitian")[0]
    }

    pub fn is_completely_positive(&self, tol: f64) -> bool {
        self.choi_min_eigenvalue() >= -tol
    }

    /// Unital within `1e-10` and Choi minimum eigenvalue at least `−1e-9`.
    pub fn is_valid(&self) -> bool {
        self.is_unital(tol::DEFAULT) && self.is_completely_positive(tol::CLASSIFY)
    }

    /// Max-entry distance between Choi matrices.
    pub fn choi_distance(&self, other: &Self) -> Result<f64> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "maps on dimensions {} and {}",
                self.dim, other.dim
            )));
        }
        Ok(self.choi.max_abs_diff(&other.choi))
    }
}

/// `X ↦ outer(inner(X))`, Kraus family `{K_a J_b}`.
pub fn compose(outer: &CPMap, inner: &CPMap) -> Result<CPMap> {
    if outer.dim != inner.dim {
        return Err(Error::DimensionMismatch(format!(
            "cannot compose maps on dimensions {} and {}",
            outer.dim, inner.dim
        )));
    }
    let mut kraus = Vec::with_capacity(outer.kraus.len() * inner.kraus.len());
    for k in &inner.kraus {
        for j in &outer.kraus {
            let p = k.matmul(j);
            if p.max_abs() > tol::KRAUS_DROP {
                kraus.push(p);
            }
        }
    }
    if kraus.is_empty() {
        kraus.push(ComplexMatrix::zeros(outer.dim, outer.dim));
    }
    CPMap::from_kraus(kraus)
}

// J[(a,i),(b,j)] = Σ_K conj(K[i,a]) K[j,b]
fn choi_of(n: usize, kraus: &[ComplexMatrix]) -> ComplexMatrix {
    let size = n * n;
    let mut choi = ComplexMatrix::zeros(size, size);
    let mut v = alloc::vec![Complex64::new(0.0, 0.0); size];
    for k in kraus {
        for a in 0..n {
            for i in 0..n {
                v[a * n + i] = k[(i, a)].conj();
            }
        }
        for (r, vr) in v.iter().enumerate() {
            if vr.re == 0.0 && vr.im == 0.0 {
                continue;
            }
            for (c, vc) in v.iter().enumerate() {
                choi[(r, c)] += vr * vc.conj();
            }
        }
    }
    choi
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::basis_op;

    #[test]
    fn choi_round_trip() {
        let k0 = ComplexMatrix::new(
            2,
            2,
            alloc::vec![
                Complex64::new(0.6, 0.0),
                Complex64::new(0.0, 0.3),
                Complex64::new(-0.2, 0.1),
                Complex64::new(0.5, -0.4),
            ],
        )
        .unwrap();
        let k1 = ComplexMatrix::from_real(2, 2, &[0.0, 0.7, 0.1, 0.2]).unwrap();
        let m = CPMap::from_kraus(alloc::vec![k0, k1]).unwrap();
        let back = CPMap::from_choi(2, m.choi(), 1e-6).unwrap();
        assert!(back.choi_distance(&m).unwrap() <= 1e-12);
        let x = ComplexMatrix::from_real(2, 2, &[1.0, 2.0, -3.0, 0.5]).unwrap();
        assert!(back.apply(&x).max_abs_diff(&m.apply(&x)) <= 1e-12);
    }

    #[test]
    fn transpose_is_rejected() {
        // the Choi matrix of X ↦ Xᵀ is the swap, with eigenvalue −1
        let mut swap = ComplexMatrix::zeros(4, 4);
        for (a, b) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
            swap[(a, b)] = Complex64::new(1.0, 0.0);
        }
        match CPMap::from_choi(2, &swap, 1e-6) {
            Err(Error::NotCompletelyPositive { min_eigenvalue }) => {
                assert!((min_eigenvalue + 1.0).abs() < 1e-12)
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(CPMap::from_choi(3, &swap, 1e-6), Err(Error::DimensionMismatch(_))));
    }

    fn swap_map() -> CPMap {
        let s = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        CPMap::from_kraus(alloc::vec![s]).unwrap()
    }

    #[test]
    fn rejects_inconsistent_families() {
        assert!(CPMap::from_kraus(alloc::vec![]).is_err());
        assert!(
            CPMap::from_kraus(alloc::vec![ComplexMatrix::identity(2), ComplexMatrix::identity(3)]).is_err()
        );
        assert!(CPMap::from_kraus(alloc::vec![ComplexMatrix::zeros(2, 3)]).is_err());
    }

    #[test]
    fn basis_image_matches_apply() {
        let m = swap_map();
        for i in 0..2 {
            for j in 0..2 {
                let direct = m.apply(&basis_op(2, i, j));
                assert_eq!(m.basis_image(i, j), direct);
            }
        }
        assert_eq!(m.apply(&basis_op(2, 0, 1)), basis_op(2, 1, 0));
    }

    #[test]
    fn unitality_and_positivity() {
        let m = swap_map();
        assert_eq!(m.unitality_deviation(), 0.0);
        assert!(m.choi_min_eigenvalue() >= -1e-12);
        let half =
            CPMap::from_kraus(alloc::vec![ComplexMatrix::identity(2).scale_real(0.5f64.sqrt())]).unwrap();
        assert!((half.unitality_deviation() - 0.5).abs() < 1e-15);
        assert!(!half.is_valid());
    }

    #[test]
    fn composition_order() {
        // measurement after swap conjugation kills coherences
        let pk: alloc::vec::Vec<_> = (0..2).map(|k| basis_op(2, k, k)).collect();
        let meas = CPMap::from_kraus(pk).unwrap();
        let both = compose(&meas, &swap_map()).unwrap();
        let x = ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        let direct = meas.apply(&swap_map().apply(&x));
        assert!(both.apply(&x).max_abs_diff(&direct) < 1e-15);
    }

    #[test]
    fn identity_choi_is_rank_one() {
        let id = CPMap::identity(2);
        let ev = hermitian_eigenvalues(id.choi()).unwrap();
        assert!((ev[3] - 2.0).abs() < 1e-14);
        assert!(ev[..3].iter().all(|e| e.abs() < 1e-14));
    }
}
