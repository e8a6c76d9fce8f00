// SPDX-License-Identifier: Apache-2.0

//! Quantum side: permutation unitaries, traced extensions, CP maps in Kraus
//! form and their subclassical taxonomy.
//!
//! Maps act in the Heisenberg picture, `𝓛(X) = Σ_a K_a* X K_a`; the predual
//! uses the adjoint family, `𝓛_*(ρ) = Σ_a K_a ρ K_a*`.

mod classify;
mod cpmap;
mod extension;
mod families;
mod permutation;

pub use classify::{classical_restriction, classify, classify_with_tol, SubclassicalClass};
pub use cpmap::{compose, CPMap};
pub use extension::{canonical_extension, compare_extensions, traced_extension, ExtensionComparison};
pub use families::{
    generic_qms, measurement_from_unitary, mk_kraus_from_q, phi_of_q, validate_generator, vn_measurement,
};
pub use permutation::{gauge_extension, permutation_unitary};
