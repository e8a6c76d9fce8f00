// SPDX-License-Identifier: Apache-2.0

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{
    complete_to_bijection, deterministic_mixture_decompose, DeterministicMixture, FiniteBijection,
    StochasticMatrix,
};
use crate::error::{Error, Result};
use crate::numerics::{ProbabilityVector, RealMatrix};

/// Invertible dynamical system `T` on `E × F` with environment law `ν`.
#[derive(Clone, Debug, PartialEq)]
pub struct Dilation {
    nu: ProbabilityVector,
    t: FiniteBijection,
}

impl Dilation {
    pub fn new(nu: ProbabilityVector, t: FiniteBijection) -> Result<Self> {
        if nu.dim() != t.env_size() {
            return Err(Error::DimensionMismatch(format!(
                "environment law on {} points for a bijection with |F| = {}",
                nu.dim(),
                t.env_size()
            )));
        }
        Ok(Self { nu, t })
    }

    #[inline]
    pub fn sys_size(&self) -> usize {
        self.t.sys_size()
    }

    #[inline]
    pub fn env_size(&self) -> usize {
        self.t.env_size()
    }

    #[inline]
    pub fn nu(&self) -> &ProbabilityVector {
        &self.nu
    }

    #[inline]
    pub fn t(&self) -> &FiniteBijection {
        &self.t
    }
}

/// Dilation of `q` through its greedy deterministic mixture.
pub fn build_dilation(q: &StochasticMatrix) -> Dilation {
    build_dilation_from_mixture(&deterministic_mixture_decompose(q))
}

/// For a mixture `{(λ_j, f_j)}` of `m` maps: `F = {0..m−1} × E`,
/// `ν(j, z) = λ_j [z = 0]` and `T(x, (j, z)) = (x′, (j, z′))` with
/// `(x′, z′) = S_{f_j}(x, z)`.
pub fn build_dilation_from_mixture(mix: &DeterministicMixture) -> Dilation {
    let n = mix.n();
    let m = mix.len();
    let env = m * n;
    let mut nu = vec![0.0; env];
    let mut forward = vec![0; n * env];
    for (j, (f, &w)) in mix.maps().iter().zip(mix.weights().weights()).enumerate() {
        nu[j * n] = w;
        let s = complete_to_bijection(f);
        for x in 0..n {
            for z in 0..n {
                let (x2, z2) = s.apply(x, z);
                forward[x * env + j * n + z] = x2 * env + j * n + z2;
            }
        }
    }
    let t = FiniteBijection::new(n, env, forward).expect("blockwise bijection");
    Dilation { nu: ProbabilityVector::new_unchecked(nu), t }
}

/// `Q(x, x′) = Σ_{y : first(T(x, y)) = x′} ν(y)`.
pub fn dilation_restriction(d: &Dilation) -> StochasticMatrix {
    let n = d.sys_size();
    let mut entries: Vec<f64> = vec![0.0; n * n];
    for x in 0..n {
        for (y, &w) in d.nu.weights().iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            let (x2, _) = d.t.apply(x, y);
            entries[x * n + x2] += w;
        }
    }
    let raw = RealMatrix::new(n, entries).expect("finite");
    super::validate_stochastic(&raw).expect("restriction of a dilation is stochastic")
}
