use std::f64::consts::LN_10;

use serde::{Deserialize, Serialize};

use super::scan::PesCurve;
use crate::chem::{hartree_to_kcalmol, PhysicalConstants};
use crate::error::{Error, Result};

/// Offset in w = d_OO − 1.9 Å.
pub const WIDTH_OFFSET_A: f64 = 1.9;
/// Curves flatter than this (Hartree) are flagged as degenerate.
pub const FLAT_BARRIER_HARTREE: f64 = 1e-6;
const METRE_PER_ANGSTROM: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BarrierParams {
    /// Barrier height, kcal/mol.
    pub v0_kcalmol: f64,
    /// Effective width, Å.
    pub width_a: f64,
    pub d_oo: f64,
    /// Proton coordinate of the highest sample, Å, when taken from a scan.
    pub z_max: Option<f64>,
    /// Set when the scanned curve is flatter than [`FLAT_BARRIER_HARTREE`].
    pub degenerate: bool,
}

impl BarrierParams {
    pub fn new(v0_kcalmol: f64, width_a: f64, d_oo: f64) -> Self {
        BarrierParams {
            v0_kcalmol,
            width_a,
            d_oo,
            z_max: None,
            degenerate: false,
        }
    }
}

/// w = d_OO − 1.9 Å.
pub fn barrier_width(d_oo: f64) -> Result<f64> {
    if !(d_oo.is_finite() && d_oo > WIDTH_OFFSET_A) {
        return Err(Error::domain(
            "d_OO",
            d_oo,
            "the width model needs d_OO > 1.9 Å",
        ));
    }
    Ok(d_oo - WIDTH_OFFSET_A)
}

/// V0 = max E − min E of the curve, in kcal/mol; w from [`barrier_width`].
pub fn extract_barrier(curve: &PesCurve) -> Result<BarrierParams> {
    if curve.samples.len() < 3 {
        return Err(Error::domain(
            "points",
            curve.samples.len() as f64,
            "need at least 3 samples",
        ));
    }
    let width_a = barrier_width(curve.d_oo)?;
    let (mut lo, mut hi, mut z_max) = (f64::INFINITY, f64::NEG_INFINITY, f64::NAN);
    for s in &curve.samples {
        lo = lo.min(s.energy);
        if s.energy > hi {
            hi = s.energy;
            z_max = s.z;
        }
    }
    let span = hi - lo;
    Ok(BarrierParams {
        v0_kcalmol: hartree_to_kcalmol(span),
        width_a,
        d_oo: curve.d_oo,
        z_max: Some(z_max),
        degenerate: span < FLAT_BARRIER_HARTREE,
    })
}

/// Tunneling, thermal and total transfer probabilities, each held as a
/// log₁₀ value and as a plain number (which underflows to 0 below ~1e-308).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransferProbabilities {
    /// Decay constant inside the barrier, m⁻¹.
    pub kappa: f64,
    pub log10_p_tunnel: f64,
    pub log10_p_thermal: f64,
    pub log10_p_total: f64,
    pub p_tunnel: f64,
    pub p_thermal: f64,
    /// `p_tunnel + p_thermal`.
    pub p_total: f64,
}

/// Rectangular-barrier WKB tunneling plus the Boltzmann channel:
///
/// κ = √(2μV₀)/ħ, P_tunnel = exp(−2wκ), P_thermal = exp(−V₀/k_BT),
/// P_total = P_tunnel + P_thermal,
///
/// with V₀ in joules per molecule and w in metres. Everything is evaluated
/// in natural-log space; the total uses log-sum-exp. Zero height or width
/// gives probability 1 for that channel.
pub fn tunneling_probability(
    p: &BarrierParams,
    c: &PhysicalConstants,
) -> Result<TransferProbabilities> {
    if !(p.v0_kcalmol.is_finite() && p.v0_kcalmol >= 0.0) {
        return Err(Error::domain(
            "V0",
            p.v0_kcalmol,
            "barrier height must be finite and non-negative",
        ));
    }
    if !(p.width_a.is_finite() && p.width_a >= 0.0) {
        return Err(Error::domain(
            "w",
            p.width_a,
            "barrier width must be finite and non-negative",
        ));
    }
    let v0_j = p.v0_kcalmol * c.joule_per_kcalmol;
    let kappa = (2.0 * c.proton_mass * v0_j).sqrt() / c.hbar;
    let ln_tunnel = -2.0 * p.width_a * METRE_PER_ANGSTROM * kappa;
    let ln_thermal = -v0_j / c.thermal_energy();
    let (hi, lo) = if ln_tunnel >= ln_thermal {
        (ln_tunnel, ln_thermal)
    } else {
        (ln_thermal, ln_tunnel)
    };
    let ln_total = hi + (lo - hi).exp().ln_1p();
    let p_tunnel = ln_tunnel.exp();
    let p_thermal = ln_thermal.exp();
    Ok(TransferProbabilities {
        kappa,
        log10_p_tunnel: ln_tunnel / LN_10,
        log10_p_thermal: ln_thermal / LN_10,
        log10_p_total: ln_total / LN_10,
        p_tunnel,
        p_thermal,
        p_total: p_tunnel + p_thermal,
    })
}

/// log₁₀(P_total(mutant) / P_total(wildtype)).
pub fn log10_rqas(mutant: &TransferProbabilities, wildtype: &TransferProbabilities) -> f64 {
    mutant.log10_p_total - wildtype.log10_p_total
}

/// P_total(mutant) / P_total(wildtype) as a plain number.
pub fn rqas(mutant: &TransferProbabilities, wildtype: &TransferProbabilities) -> f64 {
    10f64.powf(log10_rqas(mutant, wildtype))
}

/// Kinetics straight from tabulated (V₀, w) rows, bypassing the PES stage.
pub fn parametric_kinetics(
    rows: &[BarrierParams],
    c: &PhysicalConstants,
) -> Result<Vec<TransferProbabilities>> {
    rows.iter().map(|r| tunneling_probability(r, c)).collect()
}

/// d log₁₀P_tunnel / dw at fixed V₀, per Å: −2κ/ln 10 with κ in Å⁻¹.
pub fn cliff_slope(v0_kcalmol: f64, c: &PhysicalConstants) -> Result<f64> {
    let p = tunneling_probability(&BarrierParams::new(v0_kcalmol, 0.0, 0.0), c)?;
    Ok(-2.0 * p.kappa * METRE_PER_ANGSTROM / LN_10)
}
