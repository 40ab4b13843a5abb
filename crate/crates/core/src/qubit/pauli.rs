use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest register this crate will address with `u32` masks.
pub const MAX_QUBITS: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_symbol(c: char) -> Option<Pauli> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// A power of `i`, stored mod 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_power(k: u32) -> Phase {
        Phase((k % 4) as u8)
    }

    pub fn power(self) -> u32 {
        self.0 as u32
    }

    pub fn to_complex(self) -> Complex64 {
        match self.0 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }
}

impl std::ops::Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

/// Tensor product of single-qubit Paulis in symplectic form.
///
/// Qubit `q` carries X if bit `q` of `x` is set, Z if bit `q` of `z` is set
/// and Y if both are set. As an operator the string equals
/// `i^{|x&z|} X^x Z^z`, so it is Hermitian with no extra phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PauliString {
    pub x: u32,
    pub z: u32,
}

impl PauliString {
    pub const IDENTITY: PauliString = PauliString { x: 0, z: 0 };

    pub fn new(x: u32, z: u32) -> Self {
        PauliString { x, z }
    }

    pub fn single(qubit: usize, p: Pauli) -> Self {
        let bit = 1u32 << qubit;
        match p {
            Pauli::I => Self::IDENTITY,
            Pauli::X => PauliString { x: bit, z: 0 },
            Pauli::Y => PauliString { x: bit, z: bit },
            Pauli::Z => PauliString { x: 0, z: bit },
        }
    }

    /// Build from `(qubit, pauli)` pairs; later entries on the same qubit win.
    pub fn from_ops(ops: &[(usize, Pauli)]) -> Self {
        let mut s = Self::IDENTITY;
        for &(q, p) in ops {
            let bit = 1u32 << q;
            s.x &= !bit;
            s.z &= !bit;
            let o = Self::single(q, p);
            s.x |= o.x;
            s.z |= o.z;
        }
        s
    }

    /// Parse a label like `"XZYI"`, qubit 0 leftmost.
    pub fn from_label(label: &str) -> Result<Self> {
        let mut ops = Vec::with_capacity(label.len());
        for (q, c) in label.chars().enumerate() {
            if q >= MAX_QUBITS {
                return Err(Error::QubitIndex {
                    index: q,
                    n_qubits: MAX_QUBITS,
                });
            }
            let p = Pauli::from_symbol(c).ok_or_else(|| Error::HamiltonianFormat {
                line: 0,
                reason: format!("invalid Pauli symbol {c:?}"),
            })?;
            ops.push((q, p));
        }
        Ok(Self::from_ops(&ops))
    }

    pub fn label(&self, n_qubits: usize) -> String {
        (0..n_qubits).map(|q| self.get(q).symbol()).collect()
    }

    pub fn get(&self, qubit: usize) -> Pauli {
        let bit = 1u32 << qubit;
        match (self.x & bit != 0, self.z & bit != 0) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn weight(&self) -> u32 {
        (self.x | self.z).count_ones()
    }

    /// Highest qubit index touched, plus one.
    pub fn support_len(&self) -> usize {
        (32 - (self.x | self.z).leading_zeros()) as usize
    }

    pub fn n_y(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()).is_multiple_of(2)
    }

    /// `P|b⟩ = phase |b'⟩`.
    pub fn apply_to_basis(&self, b: usize) -> (usize, Phase) {
        let sign = 2 * ((b as u32 & self.z).count_ones() % 2);
        (b ^ self.x as usize, Phase::from_power(self.n_y() + sign))
    }

    pub fn to_dense(&self, n_qubits: usize) -> DMatrix<Complex64> {
        let dim = 1usize << n_qubits;
        let mut m = DMatrix::zeros(dim, dim);
        for b in 0..dim {
            let (out, ph) = self.apply_to_basis(b);
            m[(out, b)] = ph.to_complex();
        }
        m
    }
}

/// `a·b = phase · c`.
pub fn pauli_multiply(a: &PauliString, b: &PauliString) -> (PauliString, Phase) {
    let c = PauliString {
        x: a.x ^ b.x,
        z: a.z ^ b.z,
    };
    // X^x1 Z^z1 X^x2 Z^z2 = (-1)^{|z1&x2|} X^{x1^x2} Z^{z1^z2}
    let k = a.n_y() + b.n_y() + 2 * (a.z & b.x).count_ones() + 4 * 32 - c.n_y();
    (c, Phase::from_power(k))
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.support_len().max(1);
        f.write_str(&self.label(n))
    }
}

/// Real-weighted sum of Pauli strings plus an identity offset.
///
/// The identity component always lives in `constant`, never in `terms`.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    n_qubits: usize,
    pub constant: f64,
    terms: BTreeMap<PauliString, f64>,
}

impl PauliSum {
    pub fn new(n_qubits: usize) -> Result<Self> {
        if n_qubits > MAX_QUBITS {
            return Err(Error::TooManyQubits(n_qubits));
        }
        Ok(PauliSum {
            n_qubits,
            constant: 0.0,
            terms: BTreeMap::new(),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn add_term(&mut self, p: PauliString, coeff: f64) -> Result<()> {
        if p.support_len() > self.n_qubits {
            return Err(Error::QubitIndex {
                index: p.support_len() - 1,
                n_qubits: self.n_qubits,
            });
        }
        if p.is_identity() {
            self.constant += coeff;
        } else {
            *self.terms.entry(p).or_insert(0.0) += coeff;
        }
        Ok(())
    }

    /// Coefficient of `p`, with the identity reading `constant`.
    pub fn coefficient(&self, p: &PauliString) -> f64 {
        if p.is_identity() {
            self.constant
        } else {
            self.terms.get(p).copied().unwrap_or(0.0)
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PauliString, &f64)> {
        self.terms.iter()
    }

    /// Number of non-identity terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn prune(&mut self, threshold: f64) {
        self.terms.retain(|_, c| c.abs() >= threshold);
    }

    pub fn scaled(&self, s: f64) -> PauliSum {
        let mut out = self.clone();
        out.constant *= s;
        out.terms.values_mut().for_each(|c| *c *= s);
        out
    }

    /// `self + other`, both on the same register.
    pub fn plus(&self, other: &PauliSum) -> Result<PauliSum> {
        let mut out = self.clone();
        out.n_qubits = out.n_qubits.max(other.n_qubits);
        out.constant += other.constant;
        for (p, c) in other.terms() {
            out.add_term(*p, *c)?;
        }
        Ok(out)
    }

    /// `y = H x` on a dense state.
    pub fn apply(&self, x: &[Complex64], y: &mut [Complex64]) {
        for (yi, xi) in y.iter_mut().zip(x) {
            *yi = xi * self.constant;
        }
        for (p, &c) in &self.terms {
            for (b, &amp) in x.iter().enumerate() {
                let (out, ph) = p.apply_to_basis(b);
                y[out] += amp * ph.to_complex() * c;
            }
        }
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let dim = 1usize << self.n_qubits;
        let mut m = DMatrix::from_diagonal_element(dim, dim, Complex64::new(self.constant, 0.0));
        for (p, &c) in &self.terms {
            for b in 0..dim {
                let (out, ph) = p.apply_to_basis(b);
                m[(out, b)] += ph.to_complex() * c;
            }
        }
        m
    }

    /// True when every term has an even number of Y factors, so the matrix
    /// in the computational basis is real.
    pub fn is_real(&self) -> bool {
        self.terms.keys().all(|p| p.n_y() % 2 == 0)
    }

    /// ⟨b|H|b⟩ for a computational basis state.
    pub fn diagonal_element(&self, b: usize) -> f64 {
        self.constant
            + self
                .terms
                .iter()
                .filter(|(p, _)| p.x == 0)
                .map(|(p, c)| {
                    if (b as u32 & p.z).count_ones().is_multiple_of(2) {
                        *c
                    } else {
                        -*c
                    }
                })
                .sum::<f64>()
    }
}
