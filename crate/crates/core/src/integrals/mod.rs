//! One- and two-electron integrals over the STO-3G basis.

mod boys;
mod kernels;
mod tables;

pub use boys::boys_function;
pub use kernels::{eri, kinetic, nuclear_attraction, overlap};
pub use tables::{build_tables, IntegralDump, IntegralTables, TwoElectronTensor};
