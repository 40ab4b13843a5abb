use std::collections::BTreeMap;
use std::fmt;

use crate::scf::ActiveSpaceIntegrals;

/// Coefficients at or below this magnitude are dropped by [`FermionOperator::canonical`].
pub const FERMION_ZERO: f64 = 1e-14;

/// One creation (`dagger`) or annihilation operator on spin orbital `mode`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ladder {
    pub mode: usize,
    pub dagger: bool,
}

impl Ladder {
    pub fn create(mode: usize) -> Self {
        Ladder { mode, dagger: true }
    }

    pub fn annihilate(mode: usize) -> Self {
        Ladder {
            mode,
            dagger: false,
        }
    }

    fn adjoint(self) -> Self {
        Ladder {
            mode: self.mode,
            dagger: !self.dagger,
        }
    }
}

impl fmt::Display for Ladder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dagger {
            write!(f, "{}^", self.mode)
        } else {
            write!(f, "{}", self.mode)
        }
    }
}

/// Real linear combination of ladder-operator products.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FermionOperator {
    pub constant: f64,
    terms: BTreeMap<Vec<Ladder>, f64>,
}

/// Spin orbital of spatial orbital `p` with spin `beta`, blocked ordering:
/// all alpha orbitals first, then all beta.
pub fn spin_orbital(p: usize, beta: bool, n_spatial: usize) -> usize {
    if beta {
        p + n_spatial
    } else {
        p
    }
}

/// Occupation bitmask of the closed-shell determinant filling the lowest
/// `n_electrons / 2` spatial orbitals in each spin block.
pub fn hartree_fock_bitstring(n_spatial: usize, n_electrons: usize) -> usize {
    let half = (1usize << (n_electrons / 2)) - 1;
    half | (half << n_spatial)
}

impl FermionOperator {
    pub fn new() -> Self {
        Self::default()
    }

    /// Accumulate `coeff` times the product `ops` (leftmost acts last).
    /// An empty product adds to the constant.
    pub fn add_term(&mut self, ops: &[Ladder], coeff: f64) {
        if ops.is_empty() {
            self.constant += coeff;
        } else {
            *self.terms.entry(ops.to_vec()).or_insert(0.0) += coeff;
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Ladder], f64)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), *v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest mode index used, plus one.
    pub fn n_modes(&self) -> usize {
        self.terms
            .keys()
            .flatten()
            .map(|l| l.mode + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn adjoint(&self) -> FermionOperator {
        let mut out = FermionOperator {
            constant: self.constant,
            ..Default::default()
        };
        for (ops, c) in &self.terms {
            let rev: Vec<Ladder> = ops.iter().rev().map(|l| l.adjoint()).collect();
            out.add_term(&rev, *c);
        }
        out
    }

    /// Normal-ordered form: creators left of annihilators, each group sorted
    /// by descending mode. Uses `{a_p, a†_q} = δ_pq`; products with a
    /// repeated creator or annihilator vanish. Idempotent.
    pub fn canonical(&self) -> FermionOperator {
        let mut out = FermionOperator {
            constant: self.constant,
            ..Default::default()
        };
        let mut stack: Vec<(Vec<Ladder>, f64)> =
            self.terms.iter().map(|(k, v)| (k.clone(), *v)).collect();
        while let Some((mut ops, mut c)) = stack.pop() {
            let mut zero = false;
            // bubble sort; a contraction spawns a shorter term
            'sort: loop {
                for i in 0..ops.len().saturating_sub(1) {
                    let (l, r) = (ops[i], ops[i + 1]);
                    let swap = match (l.dagger, r.dagger) {
                        (false, true) => {
                            if l.mode == r.mode {
                                let mut short = ops.clone();
                                short.drain(i..i + 2);
                                stack.push((short, c));
                            }
                            true
                        }
                        (true, false) => false,
                        _ if l.mode == r.mode => {
                            zero = true;
                            break 'sort;
                        }
                        _ => l.mode < r.mode,
                    };
                    if swap {
                        ops.swap(i, i + 1);
                        c = -c;
                        continue 'sort;
                    }
                }
                break;
            }
            if !zero {
                out.add_term(&ops, c);
            }
        }
        out.terms.retain(|_, c| c.abs() > FERMION_ZERO);
        out
    }

    /// Largest coefficient difference against `other`, both canonicalised.
    pub fn max_difference(&self, other: &FermionOperator) -> f64 {
        let a = self.canonical();
        let b = other.canonical();
        let mut d = (a.constant - b.constant).abs();
        for (k, v) in &a.terms {
            d = d.max((v - b.terms.get(k).copied().unwrap_or(0.0)).abs());
        }
        for (k, v) in &b.terms {
            if !a.terms.contains_key(k) {
                d = d.max(v.abs());
            }
        }
        d
    }

    /// Σ_p a†_p a_p over `n_modes` spin orbitals.
    pub fn number(n_modes: usize) -> FermionOperator {
        let mut out = FermionOperator::new();
        for p in 0..n_modes {
            out.add_term(&[Ladder::create(p), Ladder::annihilate(p)], 1.0);
        }
        out
    }

    /// S_z = ½ Σ_p (n_pα − n_pβ) in the blocked ordering.
    pub fn spin_z(n_spatial: usize) -> FermionOperator {
        let mut out = FermionOperator::new();
        for p in 0..n_spatial {
            for (beta, s) in [(false, 0.5), (true, -0.5)] {
                let m = spin_orbital(p, beta, n_spatial);
                out.add_term(&[Ladder::create(m), Ladder::annihilate(m)], s);
            }
        }
        out
    }
}

impl fmt::Display for FermionOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+e} []", self.constant)?;
        for (ops, c) in &self.terms {
            write!(f, "\n{c:+e} [")?;
            for (i, l) in ops.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{l}")?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

/// Spin-orbital Hamiltonian of the active space:
///
/// H = E_frozen + Σ_pq Σ_σ h_pq a†_pσ a_qσ
///   + ½ Σ_pqrs Σ_στ ⟨pq|rs⟩ a†_pσ a†_qτ a_sτ a_rσ
///
/// Spin orbitals use the blocked order of [`spin_orbital`]. The result is
/// returned as built, not canonicalised.
pub fn build_fermionic_hamiltonian(asi: &ActiveSpaceIntegrals) -> FermionOperator {
    let n = asi.n_active_orbitals;
    let mut h = FermionOperator::new();
    h.constant = asi.e_frozen;
    let spins = [false, true];
    for p in 0..n {
        for q in 0..n {
            let v = asi.h_eff[(p, q)];
            if v == 0.0 {
                continue;
            }
            for &s in &spins {
                h.add_term(
                    &[
                        Ladder::create(spin_orbital(p, s, n)),
                        Ladder::annihilate(spin_orbital(q, s, n)),
                    ],
                    v,
                );
            }
        }
    }
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                for s in 0..n {
                    let v = asi.g.get(p, q, r, s);
                    if v == 0.0 {
                        continue;
                    }
                    for &sig in &spins {
                        for &tau in &spins {
                            let (a, b) = (spin_orbital(p, sig, n), spin_orbital(q, tau, n));
                            let (c, d) = (spin_orbital(s, tau, n), spin_orbital(r, sig, n));
                            if a == b || c == d {
                                continue;
                            }
                            h.add_term(
                                &[
                                    Ladder::create(a),
                                    Ladder::create(b),
                                    Ladder::annihilate(c),
                                    Ladder::annihilate(d),
                                ],
                                0.5 * v,
                            );
                        }
                    }
                }
            }
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anticommutator_contracts() {
        // a_0 a†_0 = 1 - a†_0 a_0
        let mut f = FermionOperator::new();
        f.add_term(&[Ladder::annihilate(0), Ladder::create(0)], 1.0);
        let c = f.canonical();
        assert_eq!(c.constant, 1.0);
        assert_eq!(
            c.terms().collect::<Vec<_>>(),
            vec![(&[Ladder::create(0), Ladder::annihilate(0)][..], -1.0)]
        );
    }

    #[test]
    fn pauli_exclusion() {
        let mut f = FermionOperator::new();
        f.add_term(&[Ladder::create(3), Ladder::create(3)], 2.0);
        f.add_term(
            &[
                Ladder::create(1),
                Ladder::annihilate(2),
                Ladder::annihilate(2),
            ],
            2.0,
        );
        assert!(f.canonical().is_empty());
    }

    #[test]
    fn reorder_sign() {
        let mut f = FermionOperator::new();
        f.add_term(&[Ladder::create(0), Ladder::create(1)], 1.0);
        let c = f.canonical();
        assert_eq!(
            c.terms().next().unwrap(),
            (&[Ladder::create(1), Ladder::create(0)][..], -1.0)
        );
        assert_eq!(c.canonical(), c);
    }

    #[test]
    fn hf_bitstring() {
        assert_eq!(hartree_fock_bitstring(4, 4), 0b0011_0011);
        assert_eq!(hartree_fock_bitstring(2, 2), 0b0101);
    }
}
