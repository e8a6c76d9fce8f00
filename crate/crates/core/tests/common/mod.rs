// SPDX-License-Identifier: Apache-2.0

#![allow(dead_code)]

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use subclassical_core::classical::{FiniteBijection, StochasticMatrix};
use subclassical_core::numerics::{matexp, ComplexMatrix, ProbabilityVector, RealMatrix};
use subclassical_core::Complex64;

pub struct Gen(ChaCha8Rng);

impl Gen {
    pub fn new(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn unit(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.0.next_u64() % n as u64) as usize
    }

    pub fn complex(&mut self) -> Complex64 {
        Complex64::new(self.range(-1.0, 1.0), self.range(-1.0, 1.0))
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(rows, cols, |_, _| self.complex())
    }

    pub fn hermitian(&mut self, n: usize) -> ComplexMatrix {
        let a = self.matrix(n, n);
        (&a + &a.adjoint()).scale_real(0.5)
    }

    pub fn unitary(&mut self, n: usize) -> ComplexMatrix {
        let h = self.hermitian(n).scale_real(2.0);
        matexp(&h.scale(Complex64::new(0.0, -1.0)), 1.0)
    }

    pub fn density(&mut self, n: usize) -> ComplexMatrix {
        let a = self.matrix(n, n);
        let p = a.matmul(&a.adjoint());
        let tr = p.trace().re;
        p.scale_real(1.0 / tr)
    }

    pub fn probability(&mut self, n: usize) -> ProbabilityVector {
        ProbabilityVector::normalized((0..n).map(|_| self.range(0.01, 1.0)).collect()).unwrap()
    }

    /// Normalized uniform rows, with about a fifth of the entries zeroed.
    pub fn stochastic(&mut self, n: usize) -> StochasticMatrix {
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|_| {
                let mut row: Vec<f64> =
                    (0..n).map(|_| if self.unit() < 0.2 { 0.0 } else { self.unit() }).collect();
                if row.iter().all(|&x| x == 0.0) {
                    row[self.below(n)] = 1.0;
                }
                let s: f64 = row.iter().sum();
                row.iter().map(|x| x / s).collect()
            })
            .collect();
        StochasticMatrix::from_rows(&rows).unwrap()
    }

    /// Zero-row-sum generator with rates in `[0, 2)`.
    pub fn generator(&mut self, n: usize) -> RealMatrix {
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            let mut out = 0.0;
            for j in 0..n {
                if i != j {
                    let r = self.range(0.0, 2.0);
                    entries[i * n + j] = r;
                    out += r;
                }
            }
            entries[i * n + i] = -out;
        }
        RealMatrix::new(n, entries).unwrap()
    }

    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            p.swap(i, self.below(i + 1));
        }
        p
    }

    pub fn bijection(&mut self, sys: usize, env: usize) -> FiniteBijection {
        FiniteBijection::new(sys, env, self.permutation(sys * env)).unwrap()
    }

    pub fn phases(&mut self, n: usize) -> Vec<Complex64> {
        (0..n).map(|_| Complex64::from_polar(1.0, self.range(0.0, std::f64::consts::TAU))).collect()
    }
}
