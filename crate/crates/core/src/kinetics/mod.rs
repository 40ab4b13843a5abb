//! Proton-coordinate scans, barrier extraction and transfer kinetics.

mod rates;
mod scan;

pub use rates::{
    barrier_width, cliff_slope, extract_barrier, log10_rqas, parametric_kinetics, rqas,
    tunneling_probability, BarrierParams, TransferProbabilities, FLAT_BARRIER_HARTREE,
    WIDTH_OFFSET_A,
};
pub use scan::{
    exact_pes, scan_grid, scan_pes, site_hamiltonian, PesCurve, PesSample, Provenance, ScanOptions,
    WarmStart,
};
