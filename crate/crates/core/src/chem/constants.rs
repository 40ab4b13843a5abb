use serde::{Deserialize, Serialize};

pub const BOHR_PER_ANGSTROM: f64 = 1.8897259886;
pub const KCALMOL_PER_HARTREE: f64 = 627.509474;

/// Avogadro constant (exact SI value), used to turn kcal/mol into J per molecule.
const AVOGADRO: f64 = 6.022_140_76e23;
const JOULE_PER_KCAL: f64 = 4184.0;

/// Constants for the tunneling and Boltzmann kinetics, in SI units.
///
/// The defaults are the rounded values the kinetic model was published with
/// (ħ = 1.054e-34 J·s, k_B = 1.38e-23 J/K, μ = 1.67e-27 kg, T = 310 K), not
/// CODATA values. Swapping in CODATA values shifts every log-probability
/// slightly, so keep the defaults when comparing against published tables.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// Reduced Planck constant, J·s.
    pub hbar: f64,
    /// Boltzmann constant, J/K.
    pub k_b: f64,
    /// Reduced mass of the transferring proton, kg.
    pub proton_mass: f64,
    /// Physiological temperature, K.
    pub body_temperature: f64,
    pub bohr_per_angstrom: f64,
    pub kcalmol_per_hartree: f64,
    /// Energy of one kcal/mol expressed per molecule, J.
    pub joule_per_kcalmol: f64,
}

impl PhysicalConstants {
    pub const fn published() -> Self {
        PhysicalConstants {
            hbar: 1.054e-34,
            k_b: 1.38e-23,
            proton_mass: 1.67e-27,
            body_temperature: 310.0,
            bohr_per_angstrom: BOHR_PER_ANGSTROM,
            kcalmol_per_hartree: KCALMOL_PER_HARTREE,
            joule_per_kcalmol: JOULE_PER_KCAL / AVOGADRO,
        }
    }

    /// k_B·T in joules.
    pub fn thermal_energy(&self) -> f64 {
        self.k_b * self.body_temperature
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::published()
    }
}

pub fn angstrom_to_bohr(x: f64) -> f64 {
    x * BOHR_PER_ANGSTROM
}

pub fn bohr_to_angstrom(x: f64) -> f64 {
    x / BOHR_PER_ANGSTROM
}

pub fn hartree_to_kcalmol(e: f64) -> f64 {
    e * KCALMOL_PER_HARTREE
}

pub fn kcalmol_to_hartree(e: f64) -> f64 {
    e / KCALMOL_PER_HARTREE
}
