//! Plain-text Hamiltonian format.
//!
//! ```text
//! # optional comment lines
//! -1.4779502378962005e2 IIIIIIII
//!  1.2540234190203342e-1 ZIIIIIII
//! ```
//!
//! One term per line: a coefficient in Hartree, whitespace, then a Pauli
//! label over `IXYZ` with qubit 0 leftmost. Whitespace inside the label is
//! ignored. All labels share one length, which fixes the register size. The
//! all-identity label carries the constant offset; repeated labels add up.

use std::io::Write;

use super::pauli::{PauliString, PauliSum};
use crate::error::{Error, Result};

pub fn write_hamiltonian<W: Write>(h: &PauliSum, mut out: W) -> std::io::Result<()> {
    let n = h.n_qubits();
    writeln!(out, "# n_qubits {n}, {} terms plus constant", h.len())?;
    writeln!(
        out,
        "{:>24.16e} {}",
        h.constant,
        PauliString::IDENTITY.label(n)
    )?;
    for (p, c) in h.terms() {
        writeln!(out, "{c:>24.16e} {}", p.label(n))?;
    }
    Ok(())
}

pub fn read_hamiltonian(text: &str) -> Result<PauliSum> {
    let mut parsed = Vec::new();
    let mut width: Option<usize> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |reason: String| Error::HamiltonianFormat {
            line: line_no,
            reason,
        };
        let (coeff, label) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| bad("expected `<coefficient> <label>`".into()))?;
        let coeff: f64 = coeff
            .parse()
            .map_err(|_| bad(format!("bad coefficient {coeff:?}")))?;
        if !coeff.is_finite() {
            return Err(bad("coefficient is not finite".into()));
        }
        let label: String = label.chars().filter(|c| !c.is_whitespace()).collect();
        if label.is_empty() {
            return Err(bad("missing Pauli label".into()));
        }
        let n = label.chars().count();
        match width {
            None => width = Some(n),
            Some(w) if w != n => return Err(bad(format!("label has {n} qubits, expected {w}"))),
            _ => {}
        }
        let p = PauliString::from_label(&label).map_err(|e| match e {
            Error::HamiltonianFormat { reason, .. } => bad(reason),
            other => bad(other.to_string()),
        })?;
        parsed.push((p, coeff));
    }
    let n = width.ok_or(Error::HamiltonianFormat {
        line: 0,
        reason: "no terms".into(),
    })?;
    let mut h = PauliSum::new(n)?;
    for (p, c) in parsed {
        h.add_term(p, c)?;
    }
    Ok(h)
}
