// SPDX-License-Identifier: Apache-2.0

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::numerics::{ProbabilityVector, RealMatrix};
use crate::tol;

/// `R = Σ_l λ_l V_l` with `V_l` the permutation matrix of `permutations[l]`
/// (`V_l(i, π(i)) = 1`).
#[derive(Clone, Debug, PartialEq)]
pub struct BirkhoffDecomposition {
    n: usize,
    weights: ProbabilityVector,
    permutations: Vec<Vec<usize>>,
}

impl BirkhoffDecomposition {
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn weights(&self) -> &ProbabilityVector {
        &self.weights
    }

    #[inline]
    pub fn permutations(&self) -> &[Vec<usize>] {
        &self.permutations
    }

    pub fn len(&self) -> usize {
        self.permutations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.permutations.is_empty()
    }

    pub fn reconstruct(&self) -> RealMatrix {
        let n = self.n;
        let mut out = RealMatrix::from_fn(n, |_, _| 0.0);
        let entries = out.entries_mut();
        for (p, &w) in self.permutations.iter().zip(self.weights.weights()) {
            for (i, &j) in p.iter().enumerate() {
                entries[i * n + j] += w;
            }
        }
        out
    }

    /// Weight carried by `perm`, zero when absent.
    pub fn weight_of(&self, perm: &[usize]) -> f64 {
        self.permutations
            .iter()
            .zip(self.weights.weights())
            .filter(|(p, _)| p.as_slice() == perm)
            .map(|(_, &w)| w)
            .sum()
    }
}

/// Peels perfect matchings off the positive support of a doubly stochastic
/// matrix until the residual drops below `1e-9`.
pub fn birkhoff_decompose(r: &RealMatrix) -> Result<BirkhoffDecomposition> {
    let n = r.n();
    let deviation = r.row_sums().into_iter().chain(r.col_sums()).fold(0.0_f64, |m, s| m.max((s - 1.0).abs()));
    let min_entry = r.entries().iter().fold(f64::INFINITY, |m, &x| m.min(x));
    if deviation > tol::DOUBLY_STOCHASTIC || min_entry < -tol::NEGATIVE_CLAMP {
        return Err(Error::NotDoublyStochastic { deviation: deviation.max(-min_entry) });
    }

    let mut residual: Vec<f64> = r.entries().iter().map(|&x| x.max(0.0)).collect();
    let mut weights = Vec::new();
    let mut permutations = Vec::new();
    let limit = (n - 1) * (n - 1) + 1;
    loop {
        let max = residual.iter().fold(0.0_f64, |m, &x| m.max(x));
        if max <= tol::BIRKHOFF_RESIDUAL {
            break;
        }
        if permutations.len() == limit {
            return Err(Error::DecompositionStalled { residual: max });
        }
        let perm = perfect_matching(n, |i, j| residual[i * n + j] > tol::SUPPORT)
            .ok_or(Error::DecompositionStalled { residual: max })?;
        let lambda = perm.iter().enumerate().map(|(i, &j)| residual[i * n + j]).fold(f64::INFINITY, f64::min);
        for (i, &j) in perm.iter().enumerate() {
            residual[i * n + j] -= lambda;
        }
        weights.push(lambda);
        permutations.push(perm);
    }
    let total: f64 = weights.iter().sum();
    let weights = weights.into_iter().map(|w| w / total).collect();
    Ok(BirkhoffDecomposition { n, weights: ProbabilityVector::new_unchecked(weights), permutations })
}

/// Kuhn's augmenting-path matching, rows in order, columns ascending.
fn perfect_matching(n: usize, edge: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    fn augment(
        i: usize,
        n: usize,
        edge: &dyn Fn(usize, usize) -> bool,
        visited: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for j in 0..n {
            if visited[j] || !edge(i, j) {
                continue;
            }
            visited[j] = true;
            if owner[j].is_none_or(|k| augment(k, n, edge, visited, owner)) {
                owner[j] = Some(i);
                return true;
            }
        }
        false
    }

    let mut owner: Vec<Option<usize>> = vec![None; n];
    let mut visited = vec![false; n];
    for i in 0..n {
        visited.iter_mut().for_each(|v| *v = false);
        if !augment(i, n, &edge, &mut visited, &mut owner) {
            return None;
        }
    }
    let mut perm = vec![0; n];
    for (j, i) in owner.into_iter().enumerate() {
        perm[i?] = j;
    }
    Some(perm)
}
