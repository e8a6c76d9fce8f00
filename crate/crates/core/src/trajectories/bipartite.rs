// SPDX-License-Identifier: Apache-2.0

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::classical::{validate_stochastic, StochasticMatrix};
use crate::error::{Error, Result};
use crate::numerics::{basis_op, ComplexMatrix, ProbabilityVector, RealMatrix};
use crate::qext::{classical_restriction, compose, traced_extension, vn_measurement};
use crate::tol;

/// Unitary on `H ⊗ K` (basis `|x, y⟩`, `y` fastest) with a diagonal
/// environment state `ν_ω`.
#[derive(Clone, Debug, PartialEq)]
pub struct BipartiteUnitary {
    sys: usize,
    env: usize,
    u: ComplexMatrix,
    env_state: ProbabilityVector,
}

impl BipartiteUnitary {
    pub fn new(sys: usize, env: usize, u: ComplexMatrix, env_state: ProbabilityVector) -> Result<Self> {
        if sys == 0 || env == 0 || u.rows() != sys * env || u.cols() != sys * env {
            return Err(Error::IncompatibleFactorization(format!(
                "{}x{} unitary for system {sys} and environment {env}",
                u.rows(),
                u.cols()
            )));
        }
        if env_state.dim() != env {
            return Err(Error::DimensionMismatch(format!(
                "environment state on {} points, expected {env}",
                env_state.dim()
            )));
        }
        u.require_unitary(tol::DEFAULT)?;
        Ok(Self { sys, env, u, env_state })
    }

    /// Environment in `|0⟩⟨0|`.
    pub fn with_ground_environment(sys: usize, env: usize, u: ComplexMatrix) -> Result<Self> {
        Self::new(sys, env, u, ProbabilityVector::point_mass(env.max(1), 0))
    }

    #[inline]
    pub fn sys_dim(&self) -> usize {
        self.sys
    }

    #[inline]
    pub fn env_dim(&self) -> usize {
        self.env
    }

    #[inline]
    pub fn unitary(&self) -> &ComplexMatrix {
        &self.u
    }

    #[inline]
    pub fn env_state(&self) -> &ProbabilityVector {
        &self.env_state
    }

    pub fn has_ground_environment(&self) -> bool {
        self.env_state.is_point_mass_at(0)
    }

    /// `(M)_{x,x′} = ⟨x, y_out| U |x′, y_in⟩`.
    pub fn block(&self, y_out: usize, y_in: usize) -> ComplexMatrix {
        let m = self.env;
        ComplexMatrix::from_fn(self.sys, self.sys, |x, x2| self.u[(x * m + y_out, x2 * m + y_in)])
    }

    /// `M_y = ⟨y|U|0⟩` for every outcome `y`.
    pub fn measurement_operators(&self) -> Vec<ComplexMatrix> {
        (0..self.env).map(|y| self.block(y, 0)).collect()
    }

    pub(crate) fn require_ground(&self) -> Result<()> {
        if self.has_ground_environment() {
            Ok(())
        } else {
            Err(Error::EnvironmentNotGround)
        }
    }
}

/// `R_{(x₁,y₁),(x₂,y₂)} = |⟨x₂,y₂|U|x₁,y₁⟩|²`, doubly stochastic.
pub fn r_from_unitary(bu: &BipartiteUnitary) -> RealMatrix {
    let u = &bu.u;
    RealMatrix::from_fn(u.rows(), |a, b| u[(b, a)].norm_sqr())
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceIdentityReport {
    /// `Q_{x₁,x₂} = Σ_{y₁,y₂} ν_ω(y₁) R_{(x₁,y₁),(x₂,y₂)}`.
    pub q: StochasticMatrix,
    /// Max-entry distance to the restriction of `𝓜 ∘ Tr_ω[U*(· ⊗ I)U]`.
    pub max_err: f64,
}

/// Computes `Q` from `R` and, independently, from the traced CP map.
pub fn trace_identity_check(bu: &BipartiteUnitary) -> Result<TraceIdentityReport> {
    let (n, m) = (bu.sys, bu.env);
    let r = r_from_unitary(bu);
    let mut q = vec![0.0; n * n];
    for x1 in 0..n {
        for (y1, &w) in bu.env_state.weights().iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            for x2 in 0..n {
                let row = &r.row(x1 * m + y1)[x2 * m..(x2 + 1) * m];
                q[x1 * n + x2] += w * row.iter().sum::<f64>();
            }
        }
    }
    let q = validate_stochastic(&RealMatrix::new(n, q)?)?;
    let traced = traced_extension(&bu.u, &bu.env_state)?;
    let measured = compose(&vn_measurement(n), &traced)?;
    let via_map = classical_restriction(&measured)?;
    let max_err = q.max_abs_diff(&via_map);
    Ok(TraceIdentityReport { q, max_err })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeterminismReport {
    /// Every entry of `R` within `1e-9` of 0 or 1.
    pub by_entries: bool,
    /// `U* P U` diagonal for every product basis projector `P`.
    pub by_stability: bool,
    /// Largest off-diagonal entry met in the stability test.
    pub leakage: f64,
}

impl DeterminismReport {
    pub fn agree(&self) -> bool {
        self.by_entries == self.by_stability
    }
}

pub fn determinism_check(bu: &BipartiteUnitary) -> DeterminismReport {
    let r = r_from_unitary(bu);
    let by_entries =
        r.entries().iter().all(|&x| x.abs() <= tol::CLASSIFY || (x - 1.0).abs() <= tol::CLASSIFY);
    let size = bu.u.rows();
    let leakage =
        (0..size).map(|a| bu.u.conjugate_by(&basis_op(size, a, a)).offdiag_max_abs()).fold(0.0, f64::max);
    DeterminismReport { by_entries, by_stability: leakage <= tol::CLASSIFY, leakage }
}

/// True when `R` is a permutation matrix and `𝓐 ⊗ 𝓑` is stable under `U*·U`.
pub fn is_deterministic_r(bu: &BipartiteUnitary) -> bool {
    let report = determinism_check(bu);
    report.by_entries && report.by_stability
}

/// `p(y) = Σ_{x,x′} μ(x) R_{(x,0),(x′,y)}`; the environment must start in `|0⟩`.
pub fn marginal_law(bu: &BipartiteUnitary, mu: &ProbabilityVector) -> Result<ProbabilityVector> {
    bu.require_ground()?;
    if mu.dim() != bu.sys {
        return Err(Error::DimensionMismatch(format!(
            "initial law on {} states, system has {}",
            mu.dim(),
            bu.sys
        )));
    }
    let (n, m) = (bu.sys, bu.env);
    let r = r_from_unitary(bu);
    let mut p = vec![0.0; m];
    for (x, &w) in mu.weights().iter().enumerate() {
        let row = r.row(x * m);
        for x2 in 0..n {
            for (y, py) in p.iter_mut().enumerate() {
                *py += w * row[x2 * m + y];
            }
        }
    }
    ProbabilityVector::new(p)
}

/// `p(y) = Tr[M_y ρ M_y*]` with `M_y = ⟨y|U|0⟩`.
pub fn kraus_law(bu: &BipartiteUnitary, rho: &ComplexMatrix) -> Result<Vec<f64>> {
    bu.require_ground()?;
    if rho.rows() != bu.sys || rho.cols() != bu.sys {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} state for a {}-dimensional system",
            rho.rows(),
            rho.cols(),
            bu.sys
        )));
    }
    Ok(bu.measurement_operators().iter().map(|my| my.matmul(rho).matmul(&my.adjoint()).trace().re).collect())
}
