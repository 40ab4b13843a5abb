use serde::{Deserialize, Serialize};

use super::statevector::Statevector;
use crate::error::{Error, Result};

/// Hardware-efficient ansatz: X gates prepare a basis state, then each layer
/// applies RY(θ) to every qubit followed by CNOT(q, q+1) for q = 0..n−2. An
/// optional trailing RY layer closes the circuit.
///
/// `initial_bitstring` is the reference occupation the circuit produces at
/// θ = 0. The CNOT chains permute basis states, so the X gates prepare
/// [`AnsatzSpec::preparation_bitstring`], the chains' preimage of it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnsatzSpec {
    pub n_qubits: usize,
    pub n_layers: usize,
    pub initial_bitstring: usize,
    #[serde(default)]
    pub final_rotation: bool,
}

impl AnsatzSpec {
    pub fn hardware_efficient(n_qubits: usize, n_layers: usize, initial_bitstring: usize) -> Self {
        AnsatzSpec {
            n_qubits,
            n_layers,
            initial_bitstring,
            final_rotation: false,
        }
    }

    pub fn n_parameters(&self) -> usize {
        self.n_qubits * (self.n_layers + usize::from(self.final_rotation))
    }

    /// Basis state the X gates write so that the entangling layers map it to
    /// `initial_bitstring` when every angle is zero.
    pub fn preparation_bitstring(&self) -> usize {
        let mut b = self.initial_bitstring;
        // undo the chains: last layer first, last CNOT first
        for _ in 0..self.n_layers {
            for q in (0..self.n_qubits.saturating_sub(1)).rev() {
                b ^= (b >> q & 1) << (q + 1);
            }
        }
        b
    }

    pub fn prepare(&self, theta: &[f64]) -> Result<Statevector> {
        if theta.len() != self.n_parameters() {
            return Err(Error::ParameterCount {
                expected: self.n_parameters(),
                got: theta.len(),
            });
        }
        if self.initial_bitstring >> self.n_qubits != 0 {
            return Err(Error::domain(
                "initial_bitstring",
                self.initial_bitstring as f64,
                "sets a bit beyond the register",
            ));
        }
        let mut state = Statevector::zero(self.n_qubits)?;
        let start = self.preparation_bitstring();
        for q in 0..self.n_qubits {
            if start >> q & 1 == 1 {
                state.apply_x(q)?;
            }
        }
        let mut params = theta.iter();
        for _ in 0..self.n_layers {
            for q in 0..self.n_qubits {
                state.apply_ry(q, *params.next().expect("length checked"))?;
            }
            for q in 0..self.n_qubits.saturating_sub(1) {
                state.apply_cnot(q, q + 1)?;
            }
        }
        if self.final_rotation {
            for q in 0..self.n_qubits {
                state.apply_ry(q, *params.next().expect("length checked"))?;
            }
        }
        Ok(state)
    }
}
