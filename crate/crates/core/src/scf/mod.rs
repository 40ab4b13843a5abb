//! Closed-shell Hartree-Fock and the (4e,4o) frozen-core reduction.

mod active;
mod rhf;

pub use active::{select_active_space, ActiveSelection, ActiveSpaceIntegrals, ActiveSpaceSummary};
pub use rhf::{run_rhf, ScfOptions, ScfResult};
