use std::fmt;

use serde::{Deserialize, Serialize};

use super::constants::angstrom_to_bohr;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Element {
    H,
    He,
    C,
    N,
    O,
    Fe,
}

impl Element {
    pub fn atomic_number(self) -> u32 {
        match self {
            Element::H => 1,
            Element::He => 2,
            Element::C => 6,
            Element::N => 7,
            Element::O => 8,
            Element::Fe => 26,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Element::H => "H",
            Element::He => "He",
            Element::C => "C",
            Element::N => "N",
            Element::O => "O",
            Element::Fe => "Fe",
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A point nucleus. Positions are in Bohr.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Nucleus {
    pub element: Element,
    pub charge: u32,
    pub position: [f64; 3],
}

impl Nucleus {
    pub fn new(element: Element, position: [f64; 3]) -> Self {
        Nucleus {
            element,
            charge: element.atomic_number(),
            position,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Geometry {
    pub nuclei: Vec<Nucleus>,
    pub total_charge: i32,
    pub n_electrons: usize,
}

impl Geometry {
    /// Builds a geometry and derives the electron count from the nuclear
    /// charges and the net charge.
    pub fn new(nuclei: Vec<Nucleus>, total_charge: i32) -> Result<Self> {
        let nuclear: i64 = nuclei.iter().map(|n| n.charge as i64).sum();
        let n_electrons = nuclear - total_charge as i64;
        if n_electrons < 0 {
            return Err(Error::domain(
                "total_charge",
                total_charge as f64,
                "more positive charge than nuclear charge",
            ));
        }
        Ok(Geometry {
            nuclei,
            total_charge,
            n_electrons: n_electrons as usize,
        })
    }

    /// Nuclear repulsion Σ_{A<B} Z_A Z_B / R_AB in Hartree.
    pub fn nuclear_repulsion(&self) -> f64 {
        let mut e = 0.0;
        for (i, a) in self.nuclei.iter().enumerate() {
            for b in &self.nuclei[i + 1..] {
                let r = distance(&a.position, &b.position);
                e += (a.charge * b.charge) as f64 / r;
            }
        }
        e
    }

    /// Rigid translation of every nucleus, in Bohr.
    pub fn translated(&self, shift: [f64; 3]) -> Geometry {
        let mut g = self.clone();
        for n in &mut g.nuclei {
            for k in 0..3 {
                n.position[k] += shift[k];
            }
        }
        g
    }
}

pub(crate) fn distance(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

/// Colinear [O-H-O]⁻ on the z axis: donor O at the origin, the proton at
/// `z_proton`, the acceptor O at `d_oo` (all inputs in Å).
pub fn build_geometry(d_oo: f64, z_proton: f64) -> Result<Geometry> {
    if !(d_oo > 2.0 && d_oo < 5.0) {
        return Err(Error::domain("d_OO", d_oo, "must lie in (2.0, 5.0) Å"));
    }
    if !(z_proton > 0.0 && z_proton < d_oo) {
        return Err(Error::domain(
            "z_proton",
            z_proton,
            format!("proton must sit strictly between the oxygens (0, {d_oo}) Å"),
        ));
    }
    let nuclei = vec![
        Nucleus::new(Element::O, [0.0, 0.0, 0.0]),
        Nucleus::new(Element::H, [0.0, 0.0, angstrom_to_bohr(z_proton)]),
        Nucleus::new(Element::O, [0.0, 0.0, angstrom_to_bohr(d_oo)]),
    ];
    Geometry::new(nuclei, -1)
}
