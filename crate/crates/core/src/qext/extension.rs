// SPDX-License-Identifier: Apache-2.0

use alloc::format;
use alloc::vec::Vec;

#[allow(unused_imports)] // inherent float methods need std
use num_traits::Float;

use super::{classical_restriction, permutation_unitary, CPMap};
use crate::classical::Dilation;
use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, ProbabilityVector};
use crate::tol;

/// `𝓛(X) = Tr_ω[U*(X ⊗ I)U]` for a system/environment unitary `u` and the
/// diagonal environment state `ω = diag(env_state)`.
///
/// Kraus operators are the system blocks `K_{(y′,y)} = √ν(y) ⟨y′|U|y⟩`, in
/// order of `y`, then `y′`; blocks with `ν(y) = 0` or max entry below `1e-14`
/// are dropped.
pub fn traced_extension(u: &ComplexMatrix, env_state: &ProbabilityVector) -> Result<CPMap> {
    let m = env_state.dim();
    if !u.is_square() || !u.rows().is_multiple_of(m) {
        return Err(Error::IncompatibleFactorization(format!(
            "{}x{} unitary over a {m}-dimensional environment",
            u.rows(),
            u.cols()
        )));
    }
    u.require_unitary(tol::DEFAULT)?;
    Ok(traced_unchecked(u, env_state))
}

fn traced_unchecked(u: &ComplexMatrix, env_state: &ProbabilityVector) -> CPMap {
    let m = env_state.dim();
    let n = u.rows() / m;
    let mut kraus = Vec::new();
    for (y, &w) in env_state.weights().iter().enumerate() {
        if w == 0.0 {
            continue;
        }
        let amp = w.sqrt();
        for y2 in 0..m {
            let block = ComplexMatrix::from_fn(n, n, |x2, x| u[(x2 * m + y2, x * m + y)] * amp);
            if block.max_abs() > tol::KRAUS_DROP {
                kraus.push(block);
            }
        }
    }
    CPMap::from_kraus(kraus).expect("blocks share the system dimension")
}

/// The traced extension through the permutation unitary of `d.t` with
/// `ω = diag(d.nu)`.
pub fn canonical_extension(d: &Dilation) -> CPMap {
    let u = permutation_unitary(d.t());
    traced_unchecked(&u, d.nu())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtensionComparison {
    pub restriction_equal: bool,
    pub choi_distance: f64,
}

/// Compares classical restrictions at `1e-10` and reports the Choi distance.
pub fn compare_extensions(m1: &CPMap, m2: &CPMap) -> Result<ExtensionComparison> {
    let choi_distance = m1.choi_distance(m2)?;
    let q1 = classical_restriction(m1)?;
    let q2 = classical_restriction(m2)?;
    Ok(ExtensionComparison { restriction_equal: q1.max_abs_diff(&q2) <= tol::DEFAULT, choi_distance })
}
