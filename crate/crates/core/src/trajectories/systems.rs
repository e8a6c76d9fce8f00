// SPDX-License-Identifier: Apache-2.0

//! Two-qubit interaction examples, `H = K = ℂ²`, basis `|00⟩, |01⟩, |10⟩, |11⟩`.

use num_complex::Complex64;
#[allow(unused_imports)] // inherent float methods need std
use num_traits::Float;

use super::{r_from_unitary, BipartiteUnitary};
use crate::classical::{birkhoff_decompose, BirkhoffDecomposition};
use crate::error::Result;
use crate::numerics::{kron, matexp, ComplexMatrix, RealMatrix};

/// Identity on `|00⟩, |11⟩`, exchange of `|01⟩ ↔ |10⟩`.
pub const MIDDLE_SWAP: [usize; 4] = [0, 2, 1, 3];

/// Permutations carrying the spin-system weights `a, b, c, d`, in that order.
pub const SPIN_PERMUTATIONS: [[usize; 4]; 4] = [[0, 1, 2, 3], [0, 2, 1, 3], [3, 2, 1, 0], [3, 1, 2, 0]];

#[derive(Clone, Debug, PartialEq)]
pub struct ExampleSystem {
    pub h: ComplexMatrix,
    /// `e^{-itH}` by [`matexp`].
    pub u: ComplexMatrix,
    pub closed_form_u: ComplexMatrix,
    pub r: RealMatrix,
    pub birkhoff: BirkhoffDecomposition,
}

impl ExampleSystem {
    fn assemble(h: ComplexMatrix, t: f64, closed_form_u: ComplexMatrix) -> Result<Self> {
        let u = matexp(&h.scale(Complex64::new(0.0, -1.0)), t);
        let bu = BipartiteUnitary::with_ground_environment(2, 2, u.clone())?;
        let r = r_from_unitary(&bu);
        let birkhoff = birkhoff_decompose(&r)?;
        Ok(Self { h, u, closed_form_u, r, birkhoff })
    }

    pub fn bipartite(&self) -> BipartiteUnitary {
        BipartiteUnitary::with_ground_environment(2, 2, self.u.clone()).expect("unitary example")
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn ic(im: f64) -> Complex64 {
    Complex64::new(0.0, im)
}

/// Energy exchange between two two-level systems at rate `theta`.
pub fn spontaneous_emission(theta: f64, t: f64) -> Result<ExampleSystem> {
    let mut h = ComplexMatrix::zeros(4, 4);
    h[(1, 2)] = ic(-theta);
    h[(2, 1)] = ic(theta);
    ExampleSystem::assemble(h, t, spontaneous_emission_closed_form_unitary(theta, t))
}

pub fn spontaneous_emission_closed_form_unitary(theta: f64, t: f64) -> ComplexMatrix {
    let (s, co) = (t * theta).sin_cos();
    let mut u = ComplexMatrix::identity(4);
    u[(1, 1)] = c(co);
    u[(1, 2)] = c(-s);
    u[(2, 1)] = c(s);
    u[(2, 2)] = c(co);
    u
}

/// `H = λ σx⊗σx + μ σy⊗σy`.
pub fn spin(lambda: f64, mu_c: f64, t: f64) -> Result<ExampleSystem> {
    let zero = c(0.0);
    let sx = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0])?;
    let sy = ComplexMatrix::new(2, 2, alloc::vec![zero, ic(-1.0), ic(1.0), zero])?;
    let h = &kron(&sx, &sx).scale_real(lambda) + &kron(&sy, &sy).scale_real(mu_c);
    ExampleSystem::assemble(h, t, spin_closed_form_unitary(lambda, mu_c, t))
}

/// `cos t(λ∓μ) I − i sin t(λ∓μ) σx` on the `{|00⟩,|11⟩}` and
/// `{|01⟩,|10⟩}` blocks.
pub fn spin_closed_form_unitary(lambda: f64, mu_c: f64, t: f64) -> ComplexMatrix {
    let (s1, c1) = (t * (lambda - mu_c)).sin_cos();
    let (s2, c2) = (t * (lambda + mu_c)).sin_cos();
    let mut u = ComplexMatrix::zeros(4, 4);
    u[(0, 0)] = c(c1);
    u[(3, 3)] = c(c1);
    u[(0, 3)] = ic(-s1);
    u[(3, 0)] = ic(-s1);
    u[(1, 1)] = c(c2);
    u[(2, 2)] = c(c2);
    u[(1, 2)] = ic(-s2);
    u[(2, 1)] = ic(-s2);
    u
}

/// Weights of [`SPIN_PERMUTATIONS`] in the spin-system `R`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl SpinCoefficients {
    pub fn as_array(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn reconstruct(&self) -> RealMatrix {
        let w = self.as_array();
        let mut out = [0.0; 16];
        for (p, &wl) in SPIN_PERMUTATIONS.iter().zip(&w) {
            for (i, &j) in p.iter().enumerate() {
                out[i * 4 + j] += wl;
            }
        }
        RealMatrix::new(4, out.to_vec()).expect("finite")
    }
}

/// `a = c₋²c₊²`, `b = c₋²s₊²`, `c = s₋²s₊²`, `d = s₋²c₊²` with
/// `c± = cos t(λ±μ)`, `s± = sin t(λ±μ)`.
pub fn spin_coefficients(lambda: f64, mu_c: f64, t: f64) -> SpinCoefficients {
    let (sm, cm) = (t * (lambda - mu_c)).sin_cos();
    let (sp, cp) = (t * (lambda + mu_c)).sin_cos();
    let (sm2, cm2, sp2, cp2) = (sm * sm, cm * cm, sp * sp, cp * cp);
    SpinCoefficients { a: cm2 * cp2, b: cm2 * sp2, c: sm2 * sp2, d: sm2 * cp2 }
}
