use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qubit::MAX_EXACT_QUBITS;

/// Dense register state. Basis index bit `q` is the value of qubit `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl Statevector {
    /// |b⟩ on `n_qubits` qubits.
    pub fn basis(n_qubits: usize, b: usize) -> Result<Self> {
        if n_qubits > MAX_EXACT_QUBITS {
            return Err(Error::TooManyQubits(n_qubits));
        }
        let dim = 1usize << n_qubits;
        if b >= dim {
            return Err(Error::QubitIndex {
                index: (usize::BITS - b.leading_zeros()) as usize - 1,
                n_qubits,
            });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[b] = Complex64::new(1.0, 0.0);
        Ok(Statevector {
            n_qubits,
            amplitudes,
        })
    }

    pub fn zero(n_qubits: usize) -> Result<Self> {
        Self::basis(n_qubits, 0)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn probability(&self, b: usize) -> f64 {
        self.amplitudes[b].norm_sqr()
    }

    fn check(&self, q: usize) -> Result<usize> {
        if q >= self.n_qubits {
            return Err(Error::QubitIndex {
                index: q,
                n_qubits: self.n_qubits,
            });
        }
        Ok(1 << q)
    }

    /// RY(θ) = [[cos θ/2, −sin θ/2], [sin θ/2, cos θ/2]], so RY(π)|0⟩ = |1⟩.
    pub fn apply_ry(&mut self, q: usize, theta: f64) -> Result<()> {
        let bit = self.check(q)?;
        let (s, c) = (0.5 * theta).sin_cos();
        for b in 0..self.amplitudes.len() {
            if b & bit == 0 {
                let (a0, a1) = (self.amplitudes[b], self.amplitudes[b | bit]);
                self.amplitudes[b] = a0 * c - a1 * s;
                self.amplitudes[b | bit] = a0 * s + a1 * c;
            }
        }
        Ok(())
    }

    pub fn apply_x(&mut self, q: usize) -> Result<()> {
        let bit = self.check(q)?;
        for b in 0..self.amplitudes.len() {
            if b & bit == 0 {
                self.amplitudes.swap(b, b | bit);
            }
        }
        Ok(())
    }

    pub fn apply_cnot(&mut self, control: usize, target: usize) -> Result<()> {
        let cbit = self.check(control)?;
        let tbit = self.check(target)?;
        if cbit == tbit {
            return Err(Error::domain(
                "target",
                target as f64,
                "CNOT control and target coincide",
            ));
        }
        for b in 0..self.amplitudes.len() {
            if b & cbit != 0 && b & tbit == 0 {
                self.amplitudes.swap(b, b | tbit);
            }
        }
        Ok(())
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &Statevector) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}
