use std::path::Path;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::kernels::{eri_pairs, kinetic, nuclear_attraction_pair, overlap, ShellPair};
use crate::chem::{ContractedGaussian, Geometry};
use crate::error::{Error, Result};

/// Dense four-index tensor of two-electron integrals.
///
/// Storage and the primary accessor use physicists' notation
/// ⟨pq|rs⟩ = ∫∫ p(1) q(2) r₁₂⁻¹ r(1) s(2). The chemists' view
/// (pr|qs) = ⟨pq|rs⟩ is available through [`TwoElectronTensor::chemist`].
#[derive(Debug, Clone, PartialEq)]
pub struct TwoElectronTensor {
    n: usize,
    data: Vec<f64>,
}

impl TwoElectronTensor {
    pub fn zeros(n: usize) -> Self {
        TwoElectronTensor {
            n,
            data: vec![0.0; n * n * n * n],
        }
    }

    /// Converts a chemists'-ordered array `chem[((p*n+q)*n+r)*n+s] = (pq|rs)`.
    pub fn from_chemist(n: usize, chem: &[f64]) -> Self {
        assert_eq!(chem.len(), n * n * n * n);
        let mut t = Self::zeros(n);
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    for s in 0..n {
                        // ⟨pq|rs⟩ = (pr|qs)
                        let v = chem[((p * n + r) * n + q) * n + s];
                        t.set(p, q, r, s, v);
                    }
                }
            }
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    fn index(&self, p: usize, q: usize, r: usize, s: usize) -> usize {
        ((p * self.n + q) * self.n + r) * self.n + s
    }

    /// ⟨pq|rs⟩
    #[inline]
    pub fn get(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        self.data[self.index(p, q, r, s)]
    }

    #[inline]
    pub fn set(&mut self, p: usize, q: usize, r: usize, s: usize, v: f64) {
        let i = self.index(p, q, r, s);
        self.data[i] = v;
    }

    /// (pq|rs) = ⟨pr|qs⟩
    #[inline]
    pub fn chemist(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        self.get(p, r, q, s)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Transforms to a new orbital basis: ⟨ij|kl⟩ = Σ C_pi C_qj C_rk C_sl ⟨pq|rs⟩,
    /// one index at a time.
    pub fn transform(&self, c: &DMatrix<f64>) -> TwoElectronTensor {
        let n = self.n;
        let m = c.ncols();
        assert_eq!(c.nrows(), n);
        let mut a = vec![0.0; m * n * n * n];
        for i in 0..m {
            for q in 0..n {
                for r in 0..n {
                    for s in 0..n {
                        let mut acc = 0.0;
                        for p in 0..n {
                            acc += c[(p, i)] * self.get(p, q, r, s);
                        }
                        a[((i * n + q) * n + r) * n + s] = acc;
                    }
                }
            }
        }
        let mut b = vec![0.0; m * m * n * n];
        for i in 0..m {
            for j in 0..m {
                for r in 0..n {
                    for s in 0..n {
                        let mut acc = 0.0;
                        for q in 0..n {
                            acc += c[(q, j)] * a[((i * n + q) * n + r) * n + s];
                        }
                        b[((i * m + j) * n + r) * n + s] = acc;
                    }
                }
            }
        }
        let mut d = vec![0.0; m * m * m * n];
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    for s in 0..n {
                        let mut acc = 0.0;
                        for r in 0..n {
                            acc += c[(r, k)] * b[((i * m + j) * n + r) * n + s];
                        }
                        d[((i * m + j) * m + k) * n + s] = acc;
                    }
                }
            }
        }
        let mut out = TwoElectronTensor::zeros(m);
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    for l in 0..m {
                        let mut acc = 0.0;
                        for s in 0..n {
                            acc += c[(s, l)] * d[((i * m + j) * m + k) * n + s];
                        }
                        out.set(i, j, k, l, acc);
                    }
                }
            }
        }
        out
    }
}

/// AO integrals for one geometry. Energies in Hartree.
#[derive(Debug, Clone)]
pub struct IntegralTables {
    pub overlap: DMatrix<f64>,
    pub kinetic: DMatrix<f64>,
    pub nuclear: DMatrix<f64>,
    pub eri: TwoElectronTensor,
    pub nuclear_repulsion: f64,
}

impl IntegralTables {
    pub fn n_basis(&self) -> usize {
        self.overlap.nrows()
    }

    pub fn core_hamiltonian(&self) -> DMatrix<f64> {
        &self.kinetic + &self.nuclear
    }

    pub fn to_dump(&self) -> IntegralDump {
        let flat = |m: &DMatrix<f64>| m.transpose().as_slice().to_vec();
        IntegralDump {
            n_basis: self.n_basis(),
            overlap: flat(&self.overlap),
            kinetic: flat(&self.kinetic),
            nuclear: flat(&self.nuclear),
            eri_physicist: self.eri.as_slice().to_vec(),
            nuclear_repulsion: self.nuclear_repulsion,
        }
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(&self.to_dump())?;
        std::fs::write(path, text).map_err(|e| Error::io(path, e))
    }
}

/// JSON debug dump of [`IntegralTables`]. Matrices are row-major; the ERI
/// array is `⟨pq|rs⟩` at `((p*n+q)*n+r)*n+s`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegralDump {
    pub n_basis: usize,
    pub overlap: Vec<f64>,
    pub kinetic: Vec<f64>,
    pub nuclear: Vec<f64>,
    pub eri_physicist: Vec<f64>,
    pub nuclear_repulsion: f64,
}

impl IntegralDump {
    pub fn into_tables(self) -> Result<IntegralTables> {
        let n = self.n_basis;
        let bad =
            |what: &str| Error::Dataset(format!("integral dump: {what} has the wrong length"));
        if self.overlap.len() != n * n || self.kinetic.len() != n * n || self.nuclear.len() != n * n
        {
            return Err(bad("a one-electron matrix"));
        }
        if self.eri_physicist.len() != n * n * n * n {
            return Err(bad("eri_physicist"));
        }
        Ok(IntegralTables {
            overlap: DMatrix::from_row_slice(n, n, &self.overlap),
            kinetic: DMatrix::from_row_slice(n, n, &self.kinetic),
            nuclear: DMatrix::from_row_slice(n, n, &self.nuclear),
            eri: TwoElectronTensor {
                n,
                data: self.eri_physicist,
            },
            nuclear_repulsion: self.nuclear_repulsion,
        })
    }
}

pub fn build_tables(geometry: &Geometry, basis: &[ContractedGaussian]) -> Result<IntegralTables> {
    let n = basis.len();
    let mut s = DMatrix::zeros(n, n);
    let mut t = DMatrix::zeros(n, n);
    let mut v = DMatrix::zeros(n, n);

    // kernels validate angular momentum; do it once up front via overlap
    let mut pairs = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in 0..=i {
            let sij = overlap(&basis[i], &basis[j])?;
            let tij = kinetic(&basis[i], &basis[j])?;
            let pair = ShellPair::new(&basis[i], &basis[j]);
            let vij = nuclear_attraction_pair(&pair, &geometry.nuclei);
            s[(i, j)] = sij;
            s[(j, i)] = sij;
            t[(i, j)] = tij;
            t[(j, i)] = tij;
            v[(i, j)] = vij;
            v[(j, i)] = vij;
            pairs.push(((i, j), pair));
        }
    }

    let mut chem = vec![0.0; n * n * n * n];
    let idx = |p: usize, q: usize, r: usize, s: usize| ((p * n + q) * n + r) * n + s;
    for (ij, ((i, j), bra)) in pairs.iter().enumerate() {
        for ((k, l), ket) in pairs.iter().take(ij + 1) {
            let val = eri_pairs(bra, ket);
            let (i, j, k, l) = (*i, *j, *k, *l);
            for (a, b) in [(i, j), (j, i)] {
                for (c, d) in [(k, l), (l, k)] {
                    chem[idx(a, b, c, d)] = val;
                    chem[idx(c, d, a, b)] = val;
                }
            }
        }
    }

    Ok(IntegralTables {
        overlap: s,
        kinetic: t,
        nuclear: v,
        eri: TwoElectronTensor::from_chemist(n, &chem),
        nuclear_repulsion: geometry.nuclear_repulsion(),
    })
}
