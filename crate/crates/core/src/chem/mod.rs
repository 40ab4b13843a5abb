//! Constants, unit conversions, the [O-H-O]⁻ model geometry and the STO-3G
//! basis.
//!
//! Everything electronic runs in atomic units (Hartree, Bohr). Only the
//! kinetics layer touches SI units, through [`PhysicalConstants`].

mod basis;
mod constants;
mod geometry;

pub use basis::{sto3g_basis, ContractedGaussian, Primitive};
pub use constants::{
    angstrom_to_bohr, bohr_to_angstrom, hartree_to_kcalmol, kcalmol_to_hartree, PhysicalConstants,
    BOHR_PER_ANGSTROM, KCALMOL_PER_HARTREE,
};
pub use geometry::{build_geometry, Element, Geometry, Nucleus};
