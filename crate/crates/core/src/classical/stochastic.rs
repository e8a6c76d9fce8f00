// SPDX-License-Identifier: Apache-2.0

use alloc::format;
use alloc::vec::Vec;
use core::ops::Index;

use crate::error::{Error, Result};
use crate::numerics::RealMatrix;
use crate::tol;

/// Row-stochastic matrix on the state set `{0, .., n-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct StochasticMatrix(RealMatrix);

/// Validates a raw matrix as row-stochastic, clamping entries in
/// `[-1e-12, 0)` to zero.
pub fn validate_stochastic(raw: &RealMatrix) -> Result<StochasticMatrix> {
    validate_stochastic_with_tol(raw, tol::ROW_SUM)
}

pub fn validate_stochastic_with_tol(raw: &RealMatrix, row_tol: f64) -> Result<StochasticMatrix> {
    let mut m = raw.clone();
    let n = m.n();
    for (i, row) in m.entries_mut().chunks_mut(n).enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            if *x < -tol::NEGATIVE_CLAMP {
                return Err(Error::NotStochastic {
                    row: i,
                    detail: format!("entry ({i}, {j}) = {x} is negative"),
                });
            }
            if *x < 0.0 {
                *x = 0.0;
            }
        }
        let sum: f64 = row.iter().sum();
        if (sum - 1.0).abs() > row_tol {
            return Err(Error::NotStochastic { row: i, detail: format!("row sum {sum}") });
        }
    }
    Ok(StochasticMatrix(m))
}

impl StochasticMatrix {
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        validate_stochastic(&RealMatrix::from_rows(rows)?)
    }

    pub fn identity(n: usize) -> Self {
        Self(RealMatrix::identity(n))
    }

    /// The 0/1 matrix of a map `f: E → E`.
    pub fn from_map(f: &[usize]) -> Self {
        let n = f.len();
        Self(RealMatrix::from_fn(n, |i, j| if f[i] == j { 1.0 } else { 0.0 }))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.0.n()
    }

    #[inline]
    pub fn matrix(&self) -> &RealMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> RealMatrix {
        self.0
    }

    pub fn row(&self, i: usize) -> &[f64] {
        self.0.row(i)
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.0.rows().map(<[f64]>::to_vec).collect()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0.max_abs_diff(&other.0)
    }

    /// True when every entry is 0 or 1 within `tol`.
    pub fn is_deterministic(&self, tol: f64) -> bool {
        self.0.entries().iter().all(|&x| x.abs() <= tol || (x - 1.0).abs() <= tol)
    }
}

impl Index<(usize, usize)> for StochasticMatrix {
    type Output = f64;

    #[inline]
    fn index(&self, idx: (usize, usize)) -> &f64 {
        &self.0[idx]
    }
}
