use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::geometry::{Element, Geometry};
use crate::error::{Error, Result};

/// One primitive x^l y^m z^n exp(-α r²). `coefficient` already contains the
/// primitive normalization and the contraction renormalization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Primitive {
    pub exponent: f64,
    pub coefficient: f64,
}

/// A normalized contracted Cartesian Gaussian.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContractedGaussian {
    pub center: [f64; 3],
    pub angular_momentum: [u32; 3],
    pub primitives: Vec<Primitive>,
}

impl ContractedGaussian {
    /// Normalizes each primitive and then the whole contraction. `raw` holds
    /// (exponent, contraction coefficient) pairs as printed in basis tables.
    pub fn new(center: [f64; 3], angular_momentum: [u32; 3], raw: &[(f64, f64)]) -> Self {
        let [l, m, n] = angular_momentum;
        let big_l = (l + m + n) as i32;
        let dfact = double_factorial_odd(l) * double_factorial_odd(m) * double_factorial_odd(n);
        let mut primitives: Vec<Primitive> = raw
            .iter()
            .map(|&(a, c)| {
                let norm =
                    (2.0 * a / PI).powf(0.75) * (4.0 * a).powf(big_l as f64 / 2.0) / dfact.sqrt();
                Primitive {
                    exponent: a,
                    coefficient: c * norm,
                }
            })
            .collect();

        // same-center self overlap of the contraction
        let mut s = 0.0;
        for pi in &primitives {
            for pj in &primitives {
                let p = pi.exponent + pj.exponent;
                s += pi.coefficient * pj.coefficient * dfact * (PI / p).powf(1.5)
                    / (2.0 * p).powi(big_l);
            }
        }
        let scale = 1.0 / s.sqrt();
        for p in &mut primitives {
            p.coefficient *= scale;
        }
        ContractedGaussian {
            center,
            angular_momentum,
            primitives,
        }
    }

    pub fn total_angular_momentum(&self) -> u32 {
        self.angular_momentum.iter().sum()
    }

    /// Value of the function at `r` (Bohr).
    pub fn evaluate(&self, r: [f64; 3]) -> f64 {
        let d = [
            r[0] - self.center[0],
            r[1] - self.center[1],
            r[2] - self.center[2],
        ];
        let r2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
        let [l, m, n] = self.angular_momentum;
        let poly = d[0].powi(l as i32) * d[1].powi(m as i32) * d[2].powi(n as i32);
        poly * self
            .primitives
            .iter()
            .map(|p| p.coefficient * (-p.exponent * r2).exp())
            .sum::<f64>()
    }
}

/// (2l - 1)!!, with (-1)!! = 1.
fn double_factorial_odd(l: u32) -> f64 {
    (1..=l).map(|k| (2 * k - 1) as f64).product()
}

const STO3G_1S_COEF: [f64; 3] = [0.15432897, 0.53532814, 0.44463454];
const STO3G_2S_COEF: [f64; 3] = [-0.09996723, 0.39951283, 0.70011547];
const STO3G_2P_COEF: [f64; 3] = [0.15591627, 0.60768372, 0.39195739];

const H_1S_EXP: [f64; 3] = [3.42525091, 0.62391373, 0.1688554];
const HE_1S_EXP: [f64; 3] = [6.36242139, 1.158923, 0.31364979];
const O_1S_EXP: [f64; 3] = [130.70932, 23.808861, 6.4436083];
const O_2SP_EXP: [f64; 3] = [5.0331513, 1.1695961, 0.380389];

fn zip3(exps: &[f64; 3], coefs: &[f64; 3]) -> [(f64, f64); 3] {
    [
        (exps[0], coefs[0]),
        (exps[1], coefs[1]),
        (exps[2], coefs[2]),
    ]
}

/// STO-3G functions for every nucleus, in nucleus order. Within an atom the
/// order is 1s, 2s, 2px, 2py, 2pz.
pub fn sto3g_basis(geometry: &Geometry) -> Result<Vec<ContractedGaussian>> {
    let mut basis = Vec::new();
    for nucleus in &geometry.nuclei {
        let c = nucleus.position;
        match nucleus.element {
            Element::H => basis.push(ContractedGaussian::new(
                c,
                [0, 0, 0],
                &zip3(&H_1S_EXP, &STO3G_1S_COEF),
            )),
            Element::He => basis.push(ContractedGaussian::new(
                c,
                [0, 0, 0],
                &zip3(&HE_1S_EXP, &STO3G_1S_COEF),
            )),
            Element::O => {
                basis.push(ContractedGaussian::new(
                    c,
                    [0, 0, 0],
                    &zip3(&O_1S_EXP, &STO3G_1S_COEF),
                ));
                basis.push(ContractedGaussian::new(
                    c,
                    [0, 0, 0],
                    &zip3(&O_2SP_EXP, &STO3G_2S_COEF),
                ));
                for ang in [[1, 0, 0], [0, 1, 0], [0, 0, 1]] {
                    basis.push(ContractedGaussian::new(
                        c,
                        ang,
                        &zip3(&O_2SP_EXP, &STO3G_2P_COEF),
                    ));
                }
            }
            other => return Err(Error::UnsupportedElement(other.symbol().to_string())),
        }
    }
    Ok(basis)
}
