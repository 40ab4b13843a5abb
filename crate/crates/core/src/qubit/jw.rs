use std::collections::HashMap;

use num_complex::Complex64;

use super::fermion::{FermionOperator, Ladder};
use super::pauli::{pauli_multiply, PauliString, PauliSum};
use crate::error::{Error, Result};

/// Terms with |coefficient| below this are dropped from the qubit operator.
pub const PRUNE_THRESHOLD: f64 = 1e-10;
/// Largest tolerated imaginary residue on a final coefficient.
pub const IMAGINARY_TOLERANCE: f64 = 1e-10;

type ComplexTerms = HashMap<PauliString, Complex64>;

/// a†_j = ½(X_j − iY_j) Z_{j−1}…Z_0 and a_j = ½(X_j + iY_j) Z_{j−1}…Z_0.
fn ladder_image(l: Ladder) -> [(PauliString, Complex64); 2] {
    let bit = 1u32 << l.mode;
    let parity = bit - 1;
    let x = PauliString::new(bit, parity);
    let y = PauliString::new(bit, parity | bit);
    let s = if l.dagger { -0.5 } else { 0.5 };
    [(x, Complex64::new(0.5, 0.0)), (y, Complex64::new(0.0, s))]
}

fn product_image(ops: &[Ladder]) -> ComplexTerms {
    let mut acc: ComplexTerms = HashMap::from([(PauliString::IDENTITY, Complex64::new(1.0, 0.0))]);
    for &l in ops {
        let img = ladder_image(l);
        let mut next = HashMap::with_capacity(acc.len() * 2);
        for (p, c) in &acc {
            for (q, d) in &img {
                let (r, ph) = pauli_multiply(p, q);
                *next.entry(r).or_insert(Complex64::new(0.0, 0.0)) += c * d * ph.to_complex();
            }
        }
        acc = next;
    }
    acc
}

/// Jordan-Wigner image of `f` on `n_qubits` qubits.
///
/// The operator is canonicalised first. Every resulting coefficient must be
/// real to within [`IMAGINARY_TOLERANCE`]; terms smaller than
/// [`PRUNE_THRESHOLD`] are removed.
pub fn jordan_wigner(f: &FermionOperator, n_qubits: usize) -> Result<PauliSum> {
    let modes = f.n_modes();
    if modes > n_qubits {
        return Err(Error::QubitIndex {
            index: modes - 1,
            n_qubits,
        });
    }
    let mut out = PauliSum::new(n_qubits)?;
    let mut total: ComplexTerms = HashMap::new();
    let canon = f.canonical();
    for (ops, c) in canon.terms() {
        for (p, v) in product_image(ops) {
            *total.entry(p).or_insert(Complex64::new(0.0, 0.0)) += v * c;
        }
    }
    out.constant = canon.constant;
    let mut sorted: Vec<_> = total.into_iter().collect();
    sorted.sort_by_key(|(p, _)| *p);
    for (p, v) in sorted {
        if v.im.abs() > IMAGINARY_TOLERANCE {
            return Err(Error::ImaginaryCoefficient {
                label: p.label(n_qubits),
                imag: v.im,
            });
        }
        out.add_term(p, v.re)?;
    }
    out.prune(PRUNE_THRESHOLD);
    Ok(out)
}
