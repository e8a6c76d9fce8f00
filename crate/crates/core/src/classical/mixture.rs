// SPDX-License-Identifier: Apache-2.0

use alloc::format;
use alloc::vec::Vec;

use super::StochasticMatrix;
use crate::error::{Error, Result};
use crate::numerics::{ProbabilityVector, RealMatrix};
use crate::tol;

/// Convex combination `Σ_j λ_j [f_j]` of deterministic maps on `{0..n-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeterministicMixture {
    n: usize,
    weights: ProbabilityVector,
    maps: Vec<Vec<usize>>,
}

impl DeterministicMixture {
    pub fn new(n: usize, weights: ProbabilityVector, maps: Vec<Vec<usize>>) -> Result<Self> {
        if weights.dim() != maps.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} weights for {} maps",
                weights.dim(),
                maps.len()
            )));
        }
        for (j, f) in maps.iter().enumerate() {
            if f.len() != n || f.iter().any(|&v| v >= n) {
                return Err(Error::DimensionMismatch(format!("map {j} is not a function on 0..{n}")));
            }
        }
        Ok(Self { n, weights, maps })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn weights(&self) -> &ProbabilityVector {
        &self.weights
    }

    #[inline]
    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// `Σ_j λ_j [f_j]`.
    pub fn reconstruct(&self) -> RealMatrix {
        let n = self.n;
        let mut out = RealMatrix::from_fn(n, |_, _| 0.0);
        let entries = out.entries_mut();
        for (f, &w) in self.maps.iter().zip(self.weights.weights()) {
            for (x, &y) in f.iter().enumerate() {
                entries[x * n + y] += w;
            }
        }
        out
    }
}

/// Greedy split of `q` into deterministic maps.
///
/// Each step sends every state to the largest residual entry of its row
/// (smallest column on ties), takes `λ` as the smallest of those entries and
/// subtracts `λ·[f]`. At least one positive entry vanishes per step, so at most
/// `n(n−1)+1` maps are produced.
pub fn deterministic_mixture_decompose(q: &StochasticMatrix) -> DeterministicMixture {
    let n = q.n();
    let mut residual: Vec<f64> = q.matrix().entries().to_vec();
    let mut weights = Vec::new();
    let mut maps = Vec::new();
    let max_steps = n * (n - 1) + 1;
    while maps.len() < max_steps {
        if residual.iter().fold(0.0_f64, |m, &x| m.max(x)) <= tol::SUPPORT {
            break;
        }
        let f: Vec<usize> = residual
            .chunks(n)
            .map(|row| {
                let mut best = 0;
                for (j, &x) in row.iter().enumerate() {
                    if x > row[best] {
                        best = j;
                    }
                }
                best
            })
            .collect();
        let lambda = f.iter().enumerate().map(|(x, &y)| residual[x * n + y]).fold(f64::INFINITY, f64::min);
        // a row already exhausted while others carry float dust
        if lambda <= 0.0 {
            break;
        }
        for (x, &y) in f.iter().enumerate() {
            residual[x * n + y] -= lambda;
        }
        weights.push(lambda);
        maps.push(f);
    }
    DeterministicMixture { n, weights: ProbabilityVector::new_unchecked(weights), maps }
}
