use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use super::pauli::PauliSum;
use crate::error::{Error, Result};

/// Dense-diagonalisation budget.
pub const MAX_EXACT_QUBITS: usize = 12;

#[derive(Debug, Clone)]
pub struct GroundState {
    pub energy: f64,
    /// Amplitudes over the full register, basis index bit `q` = qubit `q`.
    pub vector: Vec<Complex64>,
}

impl GroundState {
    /// Basis index carrying the largest probability.
    pub fn dominant_basis_state(&self) -> usize {
        self.vector
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm_sqr().total_cmp(&b.1.norm_sqr()))
            .map(|(i, _)| i)
            .unwrap_or(0)
    }
}

fn check_budget(h: &PauliSum) -> Result<()> {
    if h.n_qubits() > MAX_EXACT_QUBITS {
        return Err(Error::TooManyQubits(h.n_qubits()));
    }
    Ok(())
}

fn lowest_real(m: DMatrix<f64>) -> (f64, DVector<f64>) {
    let eig = SymmetricEigen::new(m);
    let k = eig.eigenvalues.imin();
    (eig.eigenvalues[k], eig.eigenvectors.column(k).into_owned())
}

fn lowest_complex(m: DMatrix<Complex64>) -> (f64, DVector<Complex64>) {
    let eig = SymmetricEigen::new(m);
    let k = eig.eigenvalues.imin();
    (eig.eigenvalues[k], eig.eigenvectors.column(k).into_owned())
}

/// Lowest eigenpair of `H` restricted to the basis states in `basis`.
fn lowest_in(h: &PauliSum, basis: &[usize]) -> GroundState {
    let dim = 1usize << h.n_qubits();
    let mut index = vec![usize::MAX; dim];
    for (i, &b) in basis.iter().enumerate() {
        index[b] = i;
    }
    let n = basis.len();
    let mut vector = vec![Complex64::new(0.0, 0.0); dim];
    if h.is_real() {
        let mut m = DMatrix::from_fn(n, n, |i, j| if i == j { h.constant } else { 0.0 });
        for (p, &c) in h.terms() {
            for (j, &b) in basis.iter().enumerate() {
                let (out, ph) = p.apply_to_basis(b);
                let i = index[out];
                if i != usize::MAX {
                    m[(i, j)] += c * ph.to_complex().re;
                }
            }
        }
        let (energy, v) = lowest_real(m);
        for (i, &b) in basis.iter().enumerate() {
            vector[b] = Complex64::new(v[i], 0.0);
        }
        GroundState { energy, vector }
    } else {
        let mut m = DMatrix::from_fn(n, n, |i, j| {
            Complex64::new(if i == j { h.constant } else { 0.0 }, 0.0)
        });
        for (p, &c) in h.terms() {
            for (j, &b) in basis.iter().enumerate() {
                let (out, ph) = p.apply_to_basis(b);
                let i = index[out];
                if i != usize::MAX {
                    m[(i, j)] += ph.to_complex() * c;
                }
            }
        }
        let (energy, v) = lowest_complex(m);
        for (i, &b) in basis.iter().enumerate() {
            vector[b] = v[i];
        }
        GroundState { energy, vector }
    }
}

/// Lowest eigenvalue and eigenvector of the full 2ⁿ×2ⁿ matrix of `h`.
///
/// Refuses registers above [`MAX_EXACT_QUBITS`].
pub fn exact_ground_state(h: &PauliSum) -> Result<GroundState> {
    check_budget(h)?;
    let basis: Vec<usize> = (0..1usize << h.n_qubits()).collect();
    Ok(lowest_in(h, &basis))
}

/// Lowest eigenpair among basis states with `n_particles` set bits.
///
/// Only meaningful when `h` conserves particle number, as Jordan-Wigner
/// images of number-conserving fermion operators do.
pub fn sector_ground_state(h: &PauliSum, n_particles: u32) -> Result<GroundState> {
    check_budget(h)?;
    let basis: Vec<usize> = (0..1usize << h.n_qubits())
        .filter(|b| b.count_ones() == n_particles)
        .collect();
    if basis.is_empty() {
        return Err(Error::domain(
            "n_particles",
            n_particles as f64,
            "no basis states in this sector",
        ));
    }
    Ok(lowest_in(h, &basis))
}
