use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::rhf::ScfResult;
use crate::error::{Error, Result};
use crate::integrals::{IntegralTables, TwoElectronTensor};

const N_ACTIVE: usize = 4;

/// How the active orbitals were picked.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum ActiveSelection {
    /// {HOMO-1, HOMO, LUMO, LUMO+1}
    Frontier,
    /// Fewer than two virtual orbitals: the four highest orbitals of
    /// {HOMO-2, HOMO-1, HOMO, LUMO, LUMO+1} that exist. The active electron
    /// count then differs from 4.
    Fallback { n_virtual: usize },
}

/// Frozen-core active-space Hamiltonian in the MO basis. The two-electron
/// tensor is in physicists' notation ⟨pq|rs⟩ over active orbitals.
#[derive(Debug, Clone)]
pub struct ActiveSpaceIntegrals {
    pub h_eff: DMatrix<f64>,
    pub g: TwoElectronTensor,
    /// Nuclear repulsion plus the frozen-core energy, Hartree.
    pub e_frozen: f64,
    pub n_active_electrons: usize,
    pub n_active_orbitals: usize,
    /// MO indices of the core and active orbitals.
    pub core_orbitals: Vec<usize>,
    pub active_orbitals: Vec<usize>,
    pub selection: ActiveSelection,
}

/// Per-geometry metadata for caches and debug dumps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ActiveSpaceSummary {
    pub scf_energy: f64,
    pub mo_energies: Vec<f64>,
    pub core_orbitals: Vec<usize>,
    pub active_orbitals: Vec<usize>,
    pub n_active_electrons: usize,
    pub e_frozen: f64,
    pub selection: ActiveSelection,
}

impl ActiveSpaceIntegrals {
    /// Frozen-core reduction from full MO-basis integrals.
    ///
    /// h_eff_pq = h_pq + Σ_i (2⟨pi|qi⟩ - ⟨pi|iq⟩) and
    /// E_frozen = E_nn + Σ_i 2h_ii + Σ_ij (2⟨ij|ij⟩ - ⟨ij|ji⟩), i, j over core.
    pub fn from_mo_integrals(
        h_mo: &DMatrix<f64>,
        g_mo: &TwoElectronTensor,
        nuclear_repulsion: f64,
        core: &[usize],
        active: &[usize],
        n_active_electrons: usize,
        selection: ActiveSelection,
    ) -> Self {
        let na = active.len();
        let h_eff = DMatrix::from_fn(na, na, |a, b| {
            let (p, q) = (active[a], active[b]);
            h_mo[(p, q)]
                + core
                    .iter()
                    .map(|&i| 2.0 * g_mo.get(p, i, q, i) - g_mo.get(p, i, i, q))
                    .sum::<f64>()
        });
        let mut g = TwoElectronTensor::zeros(na);
        for a in 0..na {
            for b in 0..na {
                for c in 0..na {
                    for d in 0..na {
                        g.set(
                            a,
                            b,
                            c,
                            d,
                            g_mo.get(active[a], active[b], active[c], active[d]),
                        );
                    }
                }
            }
        }
        let mut e_frozen = nuclear_repulsion;
        for &i in core {
            e_frozen += 2.0 * h_mo[(i, i)];
            for &j in core {
                e_frozen += 2.0 * g_mo.get(i, j, i, j) - g_mo.get(i, j, j, i);
            }
        }
        ActiveSpaceIntegrals {
            h_eff,
            g,
            e_frozen,
            n_active_electrons,
            n_active_orbitals: na,
            core_orbitals: core.to_vec(),
            active_orbitals: active.to_vec(),
            selection,
        }
    }

    /// Mean-field energy of the closed-shell reference inside the active
    /// space, plus `e_frozen`. Equals the SCF total energy when the orbitals
    /// are the SCF orbitals.
    pub fn reference_energy(&self) -> f64 {
        let n_docc = self.n_active_electrons / 2;
        let mut e = self.e_frozen;
        for i in 0..n_docc {
            e += 2.0 * self.h_eff[(i, i)];
            for j in 0..n_docc {
                e += 2.0 * self.g.get(i, j, i, j) - self.g.get(i, j, j, i);
            }
        }
        e
    }

    /// Same Hamiltonian in a rotated active basis φ'_a = Σ_b φ_b U_ba.
    pub fn rotated(&self, u: &DMatrix<f64>) -> ActiveSpaceIntegrals {
        let mut out = self.clone();
        out.h_eff = u.transpose() * &self.h_eff * u;
        out.g = self.g.transform(u);
        out
    }
}

pub fn select_active_space(
    scf: &ScfResult,
    tables: &IntegralTables,
) -> Result<ActiveSpaceIntegrals> {
    if !scf.converged {
        return Err(Error::ScfNotConverged(scf.n_iterations));
    }
    let n_mo = scf.mo_energies.len();
    let n_occ = scf.n_occupied;
    let n_virtual = n_mo - n_occ;
    if n_mo < N_ACTIVE || n_occ == 0 {
        return Err(Error::domain(
            "n_orbitals",
            n_mo as f64,
            "too few orbitals for a four-orbital active space",
        ));
    }

    let (active, selection): (Vec<usize>, _) = if n_virtual >= 2 && n_occ >= 2 {
        ((n_occ - 2..n_occ + 2).collect(), ActiveSelection::Frontier)
    } else {
        // candidate window HOMO-2 ..= LUMO+1, keep the top four that exist
        let lo = n_occ.saturating_sub(3);
        let hi = (n_occ + 2).min(n_mo);
        let window: Vec<usize> = (lo..hi).collect();
        let keep = window[window.len().saturating_sub(N_ACTIVE)..].to_vec();
        (keep, ActiveSelection::Fallback { n_virtual })
    };
    let core: Vec<usize> = (0..active[0]).collect();
    let n_active_electrons = 2 * active.iter().filter(|&&p| p < n_occ).count();

    let c = &scf.mo_coefficients;
    let h_mo = c.transpose() * tables.core_hamiltonian() * c;
    let g_mo = tables.eri.transform(c);
    Ok(ActiveSpaceIntegrals::from_mo_integrals(
        &h_mo,
        &g_mo,
        tables.nuclear_repulsion,
        &core,
        &active,
        n_active_electrons,
        selection,
    ))
}

impl ActiveSpaceSummary {
    pub fn new(scf: &ScfResult, asi: &ActiveSpaceIntegrals) -> Self {
        ActiveSpaceSummary {
            scf_energy: scf.energy_total,
            mo_energies: scf.mo_energies.iter().copied().collect(),
            core_orbitals: asi.core_orbitals.clone(),
            active_orbitals: asi.active_orbitals.clone(),
            n_active_electrons: asi.n_active_electrons,
            e_frozen: asi.e_frozen,
            selection: asi.selection.clone(),
        }
    }
}
