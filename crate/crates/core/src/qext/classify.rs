// SPDX-License-Identifier: Apache-2.0

use alloc::vec::Vec;

use super::CPMap;
use crate::classical::{validate_stochastic, StochasticMatrix};
use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, RealMatrix};
use crate::tol;

/// Position of a CP map in the subclassical taxonomy, with the block form
/// `𝓛 = (Q B; 0 C)` on `𝓐 ⊕ 𝓐_off`.
///
/// Off-diagonal matrix units `|i⟩⟨j|`, `i ≠ j`, are indexed in lexicographic
/// order. `b` is `n × n(n−1)` with `b[k, p] = 𝓛(|i⟩⟨j|)[k, k]`; `c` is
/// `n(n−1) × n(n−1)` with the off-diagonal entries of the same images.
#[derive(Clone, Debug, PartialEq)]
pub struct SubclassicalClass {
    pub is_subclassical: bool,
    pub is_doubly: bool,
    pub is_measurement: bool,
    pub is_purely: bool,
    /// `Q(x₁, x₂) = Re ⟨x₁| 𝓛(|x₂⟩⟨x₂|) |x₁⟩`, not validated.
    pub q: RealMatrix,
    pub b: ComplexMatrix,
    pub c: ComplexMatrix,
    /// Largest off-diagonal entry of any `𝓛(|i⟩⟨i|)`.
    pub leakage: f64,
    pub b_norm: f64,
    pub c_norm: f64,
}

impl SubclassicalClass {
    pub fn stochastic_q(&self) -> Result<StochasticMatrix> {
        validate_stochastic(&self.q)
    }
}

pub fn classify(m: &CPMap) -> SubclassicalClass {
    classify_with_tol(m, tol::CLASSIFY)
}

pub fn classify_with_tol(m: &CPMap, tol: f64) -> SubclassicalClass {
    let n = m.dim();
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();

    let mut leakage = 0.0_f64;
    let mut q = Vec::with_capacity(n * n);
    let diag_images: Vec<ComplexMatrix> = (0..n).map(|i| m.basis_image(i, i)).collect();
    for x1 in 0..n {
        for img in &diag_images {
            q.push(img[(x1, x1)].re);
        }
    }
    for img in &diag_images {
        leakage = leakage.max(img.offdiag_max_abs());
    }

    let np = pairs.len().max(1);
    let mut b = ComplexMatrix::zeros(n, np);
    let mut c = ComplexMatrix::zeros(np, np);
    for (p, &(i, j)) in pairs.iter().enumerate() {
        let img = m.basis_image(i, j);
        for k in 0..n {
            b[(k, p)] = img[(k, k)];
        }
        for (r, &(k, l)) in pairs.iter().enumerate() {
            c[(r, p)] = img[(k, l)];
        }
    }
    let (b_norm, c_norm) = if pairs.is_empty() { (0.0, 0.0) } else { (b.max_abs(), c.max_abs()) };

    let is_subclassical = leakage <= tol;
    let is_doubly = is_subclassical && b_norm <= tol;
    let is_measurement = is_subclassical && c_norm <= tol;
    SubclassicalClass {
        is_subclassical,
        is_doubly,
        is_measurement,
        is_purely: is_doubly && is_measurement,
        q: RealMatrix::new(n, q).expect("finite restriction"),
        b,
        c,
        leakage,
        b_norm,
        c_norm,
    }
}

/// The stochastic matrix `Q(x₁, x₂) = Tr[|x₁⟩⟨x₁| 𝓛(|x₂⟩⟨x₂|)]` of a
/// subclassical map. Fails when the leakage exceeds `1e-8`.
pub fn classical_restriction(m: &CPMap) -> Result<StochasticMatrix> {
    let n = m.dim();
    let mut leakage = 0.0_f64;
    let mut q = alloc::vec![0.0; n * n];
    for x2 in 0..n {
        let img = m.basis_image(x2, x2);
        leakage = leakage.max(img.offdiag_max_abs());
        for x1 in 0..n {
            q[x1 * n + x2] = img[(x1, x1)].re;
        }
    }
    if leakage > tol::LEAKAGE {
        return Err(Error::NotSubclassical { leakage });
    }
    validate_stochastic(&RealMatrix::new(n, q)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ComplexMatrix;
    use alloc::vec;

    #[test]
    fn identity_is_doubly_not_measurement() {
        let c = classify(&CPMap::identity(3));
        assert!(c.is_subclassical && c.is_doubly);
        assert!(!c.is_measurement && !c.is_purely);
        assert_eq!(c.q, RealMatrix::identity(3));
        assert_eq!(c.c_norm, 1.0);
    }

    #[test]
    fn swap_conjugation() {
        let s = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let m = CPMap::from_kraus(vec![s]).unwrap();
        let c = classify(&m);
        assert!(c.is_doubly && !c.is_measurement);
        let q = classical_restriction(&m).unwrap();
        assert_eq!(q, StochasticMatrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap());
    }

    #[test]
    fn hadamard_conjugation_leaks() {
        let h = 0.5_f64.sqrt();
        let u = ComplexMatrix::from_real(2, 2, &[h, h, h, -h]).unwrap();
        let m = CPMap::from_kraus(vec![u]).unwrap();
        let c = classify(&m);
        assert!(!c.is_subclassical && !c.is_doubly && !c.is_measurement && !c.is_purely);
        assert!((c.leakage - 0.5).abs() < 1e-15);
        assert!(matches!(classical_restriction(&m), Err(Error::NotSubclassical { .. })));
    }

    #[test]
    fn one_dimensional_map() {
        let c = classify(&CPMap::identity(1));
        assert!(c.is_purely);
        assert_eq!(c.b_norm, 0.0);
    }
}
