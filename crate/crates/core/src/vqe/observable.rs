use std::collections::BTreeMap;

use num_complex::Complex64;

use super::statevector::Statevector;
use crate::qubit::PauliSum;

struct Group {
    x: usize,
    /// Σ_terms c·i^{n_Y}·(−1)^{|b&z|} for every basis index b.
    weights: Vec<Complex64>,
}

/// A [`PauliSum`] rearranged for repeated expectation values.
///
/// Terms sharing an X-mask map |b⟩ to the same |b⊕x⟩, so each group
/// collapses into one weight per basis state.
pub struct CompiledObservable {
    n_qubits: usize,
    constant: f64,
    diagonal: Vec<f64>,
    groups: Vec<Group>,
}

impl CompiledObservable {
    pub fn new(h: &PauliSum) -> Self {
        let dim = 1usize << h.n_qubits();
        let mut diagonal = vec![0.0; dim];
        let mut by_x: BTreeMap<u32, Vec<Complex64>> = BTreeMap::new();
        for (p, &c) in h.terms() {
            if p.x == 0 {
                for (b, d) in diagonal.iter_mut().enumerate() {
                    *d += if (b as u32 & p.z).count_ones().is_multiple_of(2) {
                        c
                    } else {
                        -c
                    };
                }
                continue;
            }
            let w = by_x
                .entry(p.x)
                .or_insert_with(|| vec![Complex64::new(0.0, 0.0); dim]);
            for (b, wb) in w.iter_mut().enumerate() {
                let (_, ph) = p.apply_to_basis(b);
                *wb += ph.to_complex() * c;
            }
        }
        let groups = by_x
            .into_iter()
            .map(|(x, weights)| Group {
                x: x as usize,
                weights,
            })
            .collect();
        CompiledObservable {
            n_qubits: h.n_qubits(),
            constant: h.constant,
            diagonal,
            groups,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// ⟨ψ|H|ψ⟩, real part. The imaginary part vanishes for Hermitian H.
    pub fn expectation(&self, state: &Statevector) -> f64 {
        let psi = state.amplitudes();
        let mut e = self.constant;
        for (a, d) in psi.iter().zip(&self.diagonal) {
            e += d * a.norm_sqr();
        }
        for g in &self.groups {
            let mut acc = Complex64::new(0.0, 0.0);
            for (b, (a, w)) in psi.iter().zip(&g.weights).enumerate() {
                acc += psi[b ^ g.x].conj() * w * a;
            }
            e += acc.re;
        }
        e
    }
}

/// One-off ⟨ψ|H|ψ⟩; compile once with [`CompiledObservable`] for loops.
pub fn expectation(h: &PauliSum, state: &Statevector) -> f64 {
    CompiledObservable::new(h).expectation(state)
}
