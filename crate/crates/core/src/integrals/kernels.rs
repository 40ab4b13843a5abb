//! McMurchie-Davidson integrals over contracted Cartesian Gaussians.
//!
//! A product of two primitives is expanded in Hermite Gaussians centered at
//! the Gaussian-product center P. Overlap and kinetic integrals only need the
//! t = 0 coefficient; the Coulomb-type integrals contract the expansion with
//! the Hermite Coulomb integrals R_{tuv}, which are built from the Boys
//! function.

use std::f64::consts::PI;

use super::boys::boys_array;
use crate::chem::{ContractedGaussian, Nucleus};
use crate::error::{Error, Result};

const MAX_L: u32 = 1;

/// Hermite expansion coefficients E^{ij}_t along one axis, for all
/// i ≤ i_max, j ≤ j_max. Indexed `[i][j][t]`.
struct HermiteTable {
    e: Vec<Vec<Vec<f64>>>,
}

impl HermiteTable {
    fn new(i_max: usize, j_max: usize, a: f64, b: f64, a_minus_b: f64) -> Self {
        let p = a + b;
        let mu = a * b / p;
        let x_pa = -b / p * a_minus_b;
        let x_pb = a / p * a_minus_b;
        let t_len = i_max + j_max + 1;
        let mut e = vec![vec![vec![0.0; t_len + 1]; j_max + 1]; i_max + 1];
        e[0][0][0] = (-mu * a_minus_b * a_minus_b).exp();
        let half_p = 1.0 / (2.0 * p);
        // raise i with j = 0
        for i in 0..i_max {
            for t in 0..=(i + 1) {
                let lower = if t > 0 { e[i][0][t - 1] } else { 0.0 };
                e[i + 1][0][t] =
                    half_p * lower + x_pa * e[i][0][t] + (t + 1) as f64 * e[i][0][t + 1];
            }
        }
        // raise j for every i
        for i in 0..=i_max {
            for j in 0..j_max {
                for t in 0..=(i + j + 1) {
                    let lower = if t > 0 { e[i][j][t - 1] } else { 0.0 };
                    e[i][j + 1][t] =
                        half_p * lower + x_pb * e[i][j][t] + (t + 1) as f64 * e[i][j][t + 1];
                }
            }
        }
        HermiteTable { e }
    }

    fn get(&self, i: u32, j: u32, t: usize) -> f64 {
        self.e[i as usize][j as usize][t]
    }
}

/// Hermite Coulomb integrals R^0_{tuv}(α, PC) for t+u+v ≤ l_max.
struct CoulombTable {
    dim: usize,
    r: Vec<f64>,
}

impl CoulombTable {
    fn new(l_max: usize, alpha: f64, pc: [f64; 3]) -> Self {
        let dim = l_max + 1;
        let idx = |n: usize, t: usize, u: usize, v: usize| ((n * dim + t) * dim + u) * dim + v;
        let mut r = vec![0.0; dim * dim * dim * dim];
        let r2 = pc[0] * pc[0] + pc[1] * pc[1] + pc[2] * pc[2];
        let mut f = vec![0.0; dim];
        boys_array(alpha * r2, &mut f);
        let mut scale = 1.0;
        for (n, fn_) in f.iter().enumerate() {
            r[idx(n, 0, 0, 0)] = scale * fn_;
            scale *= -2.0 * alpha;
        }
        for order in 1..=l_max {
            for n in 0..=(l_max - order) {
                for t in 0..=order {
                    for u in 0..=(order - t) {
                        let v = order - t - u;
                        let val = if t > 0 {
                            let mut s = pc[0] * r[idx(n + 1, t - 1, u, v)];
                            if t > 1 {
                                s += (t - 1) as f64 * r[idx(n + 1, t - 2, u, v)];
                            }
                            s
                        } else if u > 0 {
                            let mut s = pc[1] * r[idx(n + 1, t, u - 1, v)];
                            if u > 1 {
                                s += (u - 1) as f64 * r[idx(n + 1, t, u - 2, v)];
                            }
                            s
                        } else {
                            let mut s = pc[2] * r[idx(n + 1, t, u, v - 1)];
                            if v > 1 {
                                s += (v - 1) as f64 * r[idx(n + 1, t, u, v - 2)];
                            }
                            s
                        };
                        r[idx(n, t, u, v)] = val;
                    }
                }
            }
        }
        CoulombTable { dim, r }
    }

    fn get(&self, t: usize, u: usize, v: usize) -> f64 {
        self.r[(t * self.dim + u) * self.dim + v]
    }
}

/// Everything about a primitive product that the Coulomb kernels reuse.
#[derive(Debug, Clone)]
pub(crate) struct PrimitivePair {
    p: f64,
    center: [f64; 3],
    /// coefficient product times the Hermite coefficients E_t·E_u·E_v,
    /// flattened over (t, u, v) with t ≤ lx etc.
    hermite: Vec<(usize, usize, usize, f64)>,
    l_total: usize,
}

/// Primitive products of a contracted pair.
#[derive(Debug, Clone)]
pub(crate) struct ShellPair {
    prims: Vec<PrimitivePair>,
}

impl ShellPair {
    pub(crate) fn new(a: &ContractedGaussian, b: &ContractedGaussian) -> Self {
        let la = a.angular_momentum;
        let lb = b.angular_momentum;
        let mut prims = Vec::with_capacity(a.primitives.len() * b.primitives.len());
        for pa in &a.primitives {
            for pb in &b.primitives {
                let p = pa.exponent + pb.exponent;
                let mut center = [0.0; 3];
                let tables: Vec<HermiteTable> = (0..3)
                    .map(|k| {
                        center[k] = (pa.exponent * a.center[k] + pb.exponent * b.center[k]) / p;
                        HermiteTable::new(
                            la[k] as usize,
                            lb[k] as usize,
                            pa.exponent,
                            pb.exponent,
                            a.center[k] - b.center[k],
                        )
                    })
                    .collect();
                let c = pa.coefficient * pb.coefficient;
                let (lx, ly, lz) = (
                    (la[0] + lb[0]) as usize,
                    (la[1] + lb[1]) as usize,
                    (la[2] + lb[2]) as usize,
                );
                let mut hermite = Vec::new();
                for t in 0..=lx {
                    let et = tables[0].get(la[0], lb[0], t);
                    for u in 0..=ly {
                        let eu = tables[1].get(la[1], lb[1], u);
                        for v in 0..=lz {
                            let ev = tables[2].get(la[2], lb[2], v);
                            hermite.push((t, u, v, c * et * eu * ev));
                        }
                    }
                }
                prims.push(PrimitivePair {
                    p,
                    center,
                    hermite,
                    l_total: lx + ly + lz,
                });
            }
        }
        ShellPair { prims }
    }
}

fn check_shell(g: &ContractedGaussian) -> Result<()> {
    let l = g.total_angular_momentum();
    if l > MAX_L {
        return Err(Error::UnsupportedAngularMomentum(l));
    }
    Ok(())
}

fn overlap_1d(i: u32, j: u32, a: f64, b: f64, ab: f64) -> f64 {
    let table = HermiteTable::new(i as usize, j as usize, a, b, ab);
    table.get(i, j, 0) * (PI / (a + b)).sqrt()
}

/// Overlap ⟨a|b⟩.
pub fn overlap(a: &ContractedGaussian, b: &ContractedGaussian) -> Result<f64> {
    check_shell(a)?;
    check_shell(b)?;
    Ok(contract_one_body(a, b, |alpha, beta| {
        (0..3)
            .map(|k| {
                overlap_1d(
                    a.angular_momentum[k],
                    b.angular_momentum[k],
                    alpha,
                    beta,
                    a.center[k] - b.center[k],
                )
            })
            .product()
    }))
}

/// Kinetic energy ⟨a|-½∇²|b⟩ in Hartree.
pub fn kinetic(a: &ContractedGaussian, b: &ContractedGaussian) -> Result<f64> {
    check_shell(a)?;
    check_shell(b)?;
    Ok(contract_one_body(a, b, |alpha, beta| {
        let mut s = [0.0; 3];
        let mut d2 = [0.0; 3];
        for k in 0..3 {
            let i = a.angular_momentum[k];
            let j = b.angular_momentum[k];
            let ab = a.center[k] - b.center[k];
            let table = HermiteTable::new(i as usize, j as usize + 2, alpha, beta, ab);
            let norm = (PI / (alpha + beta)).sqrt();
            let sij = |jj: u32| table.get(i, jj, 0) * norm;
            s[k] = sij(j);
            // ⟨i| d²/dx² |j⟩ with the derivative acting on the ket
            let mut v = -2.0 * beta * (2 * j + 1) as f64 * sij(j) + 4.0 * beta * beta * sij(j + 2);
            if j >= 2 {
                v += (j * (j - 1)) as f64 * sij(j - 2);
            }
            d2[k] = v;
        }
        -0.5 * (d2[0] * s[1] * s[2] + s[0] * d2[1] * s[2] + s[0] * s[1] * d2[2])
    }))
}

fn contract_one_body(
    a: &ContractedGaussian,
    b: &ContractedGaussian,
    prim: impl Fn(f64, f64) -> f64,
) -> f64 {
    let mut total = 0.0;
    for pa in &a.primitives {
        for pb in &b.primitives {
            total += pa.coefficient * pb.coefficient * prim(pa.exponent, pb.exponent);
        }
    }
    total
}

/// Electron-nucleus attraction ⟨a| -Σ_C Z_C/|r - C| |b⟩ in Hartree.
pub fn nuclear_attraction(
    a: &ContractedGaussian,
    b: &ContractedGaussian,
    nuclei: &[Nucleus],
) -> Result<f64> {
    check_shell(a)?;
    check_shell(b)?;
    Ok(nuclear_attraction_pair(&ShellPair::new(a, b), nuclei))
}

pub(crate) fn nuclear_attraction_pair(pair: &ShellPair, nuclei: &[Nucleus]) -> f64 {
    let mut total = 0.0;
    for prim in &pair.prims {
        for nuc in nuclei {
            let pc = [
                prim.center[0] - nuc.position[0],
                prim.center[1] - nuc.position[1],
                prim.center[2] - nuc.position[2],
            ];
            let r = CoulombTable::new(prim.l_total, prim.p, pc);
            let s: f64 = prim
                .hermite
                .iter()
                .map(|&(t, u, v, e)| e * r.get(t, u, v))
                .sum();
            total -= nuc.charge as f64 * 2.0 * PI / prim.p * s;
        }
    }
    total
}

/// Two-electron repulsion integral in chemists' notation, (ab|cd) =
/// ∫∫ a(1) b(1) r₁₂⁻¹ c(2) d(2).
pub fn eri(
    a: &ContractedGaussian,
    b: &ContractedGaussian,
    c: &ContractedGaussian,
    d: &ContractedGaussian,
) -> Result<f64> {
    for g in [a, b, c, d] {
        check_shell(g)?;
    }
    Ok(eri_pairs(&ShellPair::new(a, b), &ShellPair::new(c, d)))
}

pub(crate) fn eri_pairs(bra: &ShellPair, ket: &ShellPair) -> f64 {
    let mut total = 0.0;
    for pp in &bra.prims {
        for qq in &ket.prims {
            let p = pp.p;
            let q = qq.p;
            let alpha = p * q / (p + q);
            let pq = [
                pp.center[0] - qq.center[0],
                pp.center[1] - qq.center[1],
                pp.center[2] - qq.center[2],
            ];
            let r = CoulombTable::new(pp.l_total + qq.l_total, alpha, pq);
            let mut s = 0.0;
            for &(t, u, v, e1) in &pp.hermite {
                for &(tau, nu, phi, e2) in &qq.hermite {
                    let sign = if (tau + nu + phi) % 2 == 0 { 1.0 } else { -1.0 };
                    s += e1 * sign * e2 * r.get(t + tau, u + nu, v + phi);
                }
            }
            total += 2.0 * PI.powf(2.5) / (p * q * (p + q).sqrt()) * s;
        }
    }
    total
}
