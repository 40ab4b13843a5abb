//! Second-quantised Hamiltonians and their qubit images.

mod exact;
mod fermion;
mod io;
mod jw;
mod pauli;

pub use exact::{exact_ground_state, sector_ground_state, GroundState, MAX_EXACT_QUBITS};
pub use fermion::{
    build_fermionic_hamiltonian, hartree_fock_bitstring, spin_orbital, FermionOperator, Ladder,
    FERMION_ZERO,
};
pub use io::{read_hamiltonian, write_hamiltonian};
pub use jw::{jordan_wigner, IMAGINARY_TOLERANCE, PRUNE_THRESHOLD};
pub use pauli::{pauli_multiply, Pauli, PauliString, PauliSum, Phase, MAX_QUBITS};

use crate::error::Result;
use crate::scf::ActiveSpaceIntegrals;

/// Qubit Hamiltonian of an active space: Jordan-Wigner image of
/// [`build_fermionic_hamiltonian`] on `2 × n_active_orbitals` qubits.
pub fn qubit_hamiltonian(asi: &ActiveSpaceIntegrals) -> Result<PauliSum> {
    jordan_wigner(&build_fermionic_hamiltonian(asi), 2 * asi.n_active_orbitals)
}
