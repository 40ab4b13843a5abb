use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chem::{build_geometry, sto3g_basis};
use crate::error::{Error, Result};
use crate::integrals::build_tables;
use crate::qubit::{exact_ground_state, hartree_fock_bitstring, qubit_hamiltonian, PauliSum};
use crate::scf::{run_rhf, select_active_space, ScfOptions};
use crate::vqe::{run_vqe_continued, AnsatzSpec, OptimizerState, VqeOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    AbInitio,
    Parametric,
}

/// How each scan point's VQE starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WarmStart {
    /// Every point from the seeded initial angles.
    Off,
    /// Best angles of the previous point, fresh Adam moments.
    Angles,
    /// The previous point's whole Adam trajectory continues.
    Optimizer,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanOptions {
    pub points: usize,
    /// Distance kept from each oxygen, Å.
    pub margin: f64,
    pub n_layers: usize,
    pub warm_start: WarmStart,
    /// Passes over the grid, alternating direction. The first point of the
    /// first pass is a cold start; later passes revisit every point warm and
    /// keep the lower energy.
    pub sweeps: usize,
    pub vqe: VqeOptions,
    pub scf: ScfOptions,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            points: 25,
            margin: 0.8,
            n_layers: 3,
            warm_start: WarmStart::Optimizer,
            sweeps: 2,
            vqe: VqeOptions::default(),
            scf: ScfOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PesSample {
    /// Proton coordinate, Å from the donor oxygen.
    pub z: f64,
    /// Ground-state energy estimate, Hartree.
    pub energy: f64,
    pub scf_energy: f64,
    /// Dense-diagonalisation energy, when the VQE oracle is on.
    pub exact_energy: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PesCurve {
    pub d_oo: f64,
    pub samples: Vec<PesSample>,
    pub provenance: Provenance,
    /// Circuit energy evaluations spent on the curve.
    pub n_evaluations: usize,
}

/// `points` equidistant proton positions in [margin, d_OO − margin].
pub fn scan_grid(d_oo: f64, margin: f64, points: usize) -> Result<Vec<f64>> {
    if points < 3 {
        return Err(Error::domain(
            "points",
            points as f64,
            "a scan needs at least 3 points",
        ));
    }
    if !(margin > 0.0 && d_oo - 2.0 * margin > 0.0) {
        return Err(Error::domain(
            "margin",
            margin,
            format!("need 0 < margin < d_OO/2 = {}", d_oo / 2.0),
        ));
    }
    let step = (d_oo - 2.0 * margin) / (points - 1) as f64;
    Ok((0..points).map(|i| margin + step * i as f64).collect())
}

struct Point {
    z: f64,
    scf_energy: f64,
    hamiltonian: PauliSum,
}

/// Active-space qubit Hamiltonian and RHF energy of the model site with the
/// proton `z` Å from the donor oxygen.
pub fn site_hamiltonian(d_oo: f64, z: f64, scf: &ScfOptions) -> Result<(PauliSum, f64)> {
    let g = build_geometry(d_oo, z)?;
    let tables = build_tables(&g, &sto3g_basis(&g)?)?;
    let res = run_rhf(&tables, g.n_electrons, scf)?;
    let asi = select_active_space(&res, &tables)?;
    Ok((qubit_hamiltonian(&asi)?, res.energy_total))
}

fn prepare_point(d_oo: f64, z: f64, scf: &ScfOptions) -> Result<Point> {
    let (hamiltonian, scf_energy) = site_hamiltonian(d_oo, z, scf)?;
    Ok(Point {
        z,
        scf_energy,
        hamiltonian,
    })
}

/// Ab-initio PES along the proton coordinate at fixed d_OO.
///
/// Hamiltonians for all points are built in parallel; the VQE then runs
/// left to right (and back, with `sweeps = 2`) so each point warm-starts
/// from its neighbour. Any
/// failure aborts the scan with the offending z attached.
pub fn scan_pes(d_oo: f64, opts: &ScanOptions) -> Result<PesCurve> {
    let grid = scan_grid(d_oo, opts.margin, opts.points)?;
    let points: Vec<Point> = grid
        .par_iter()
        .map(|&z| {
            prepare_point(d_oo, z, &opts.scf).map_err(|e| Error::Scan {
                z,
                source: Box::new(e),
            })
        })
        .collect::<Result<_>>()?;

    let n_qubits = points[0].hamiltonian.n_qubits();
    // closed-shell reference with as many electrons as active orbitals
    let reference = hartree_fock_bitstring(n_qubits / 2, n_qubits / 2);
    let spec = AnsatzSpec::hardware_efficient(n_qubits, opts.n_layers, reference);
    let fresh = || {
        OptimizerState::adam(
            opts.vqe.initial_theta(spec.n_parameters()),
            opts.vqe.step_size,
        )
    };

    if opts.sweeps == 0 {
        return Err(Error::domain("sweeps", 0.0, "need at least one pass"));
    }
    let mut best = vec![f64::INFINITY; points.len()];
    let mut exact = vec![None; points.len()];
    let mut n_evaluations = 0;
    let mut state = fresh();
    for sweep in 0..opts.sweeps {
        let order: Vec<usize> = if sweep % 2 == 0 {
            (0..points.len()).collect()
        } else {
            (0..points.len()).rev().collect()
        };
        for i in order {
            let p = &points[i];
            let wrap = |e: Error| Error::Scan {
                z: p.z,
                source: Box::new(e),
            };
            let (trace, after) =
                run_vqe_continued(&p.hamiltonian, &spec, &opts.vqe, state).map_err(wrap)?;
            n_evaluations += trace.n_evaluations;
            best[i] = best[i].min(trace.final_energy);
            if let Some(gap) = trace.gap_to_exact {
                exact[i] = Some(trace.final_energy - gap);
            }
            state = match opts.warm_start {
                WarmStart::Off => fresh(),
                WarmStart::Angles => {
                    OptimizerState::adam(trace.final_theta.clone(), opts.vqe.step_size)
                }
                WarmStart::Optimizer => after,
            };
        }
    }
    let samples = points
        .iter()
        .zip(best.into_iter().zip(exact))
        .map(|(p, (energy, exact_energy))| PesSample {
            z: p.z,
            energy,
            scf_energy: p.scf_energy,
            exact_energy,
        })
        .collect();
    Ok(PesCurve {
        d_oo,
        samples,
        provenance: Provenance::AbInitio,
        n_evaluations,
    })
}

/// Exact (dense) PES on the same grid, for diagnostics and tests.
pub fn exact_pes(d_oo: f64, opts: &ScanOptions) -> Result<PesCurve> {
    let grid = scan_grid(d_oo, opts.margin, opts.points)?;
    let samples = grid
        .par_iter()
        .map(|&z| {
            let p = prepare_point(d_oo, z, &opts.scf).map_err(|e| Error::Scan {
                z,
                source: Box::new(e),
            })?;
            let e = exact_ground_state(&p.hamiltonian)?.energy;
            Ok(PesSample {
                z,
                energy: e,
                scf_energy: p.scf_energy,
                exact_energy: Some(e),
            })
        })
        .collect::<Result<_>>()?;
    Ok(PesCurve {
        d_oo,
        samples,
        provenance: Provenance::AbInitio,
        n_evaluations: 0,
    })
}
