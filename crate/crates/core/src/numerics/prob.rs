// SPDX-License-Identifier: Apache-2.0

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::tol;

/// Nonnegative weights summing to one.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbabilityVector {
    weights: Vec<f64>,
}

impl ProbabilityVector {
    /// Validates `weights`. Entries in `[-1e-12, 0)` are clamped to zero and the
    /// sum must be within `1e-12` of one.
    pub fn new(mut weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::NotProbabilityVector("empty".into()));
        }
        for (i, w) in weights.iter_mut().enumerate() {
            if !w.is_finite() {
                return Err(Error::NotProbabilityVector(format!("weight {i} is not finite")));
            }
            if *w < -tol::NEGATIVE_CLAMP {
                return Err(Error::NotProbabilityVector(format!("weight {i} = {w} is negative")));
            }
            if *w < 0.0 {
                *w = 0.0;
            }
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > tol::PROBABILITY_SUM {
            return Err(Error::NotProbabilityVector(format!("weights sum to {sum}")));
        }
        Ok(Self { weights })
    }

    /// Divides by the total; fails on a nonpositive total or negative entries.
    pub fn normalized(weights: Vec<f64>) -> Result<Self> {
        let sum: f64 = weights.iter().sum();
        if !sum.is_finite() || sum <= 0.0 {
            return Err(Error::NotProbabilityVector(format!("total weight {sum}")));
        }
        Self::new(weights.into_iter().map(|w| w / sum).collect())
    }

    pub(crate) fn new_unchecked(weights: Vec<f64>) -> Self {
        Self { weights }
    }

    pub fn point_mass(dim: usize, at: usize) -> Self {
        assert!(at < dim, "point mass at {at} outside 0..{dim}");
        let mut weights = vec![0.0; dim];
        weights[at] = 1.0;
        Self { weights }
    }

    pub fn uniform(dim: usize) -> Self {
        assert!(dim > 0);
        Self { weights: vec![1.0 / dim as f64; dim] }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    #[inline]
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    #[inline]
    pub fn get(&self, i: usize) -> f64 {
        self.weights[i]
    }

    /// True when all mass sits on index `at`.
    pub fn is_point_mass_at(&self, at: usize) -> bool {
        self.weights.iter().enumerate().all(|(i, &w)| if i == at { w == 1.0 } else { w == 0.0 })
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim());
        self.weights.iter().zip(&other.weights).fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}
