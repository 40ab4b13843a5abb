use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use rand::Rng;
use rqas::chem::{ContractedGaussian, Nucleus};

/// Gauss-Hermite rule from the Golub-Welsch eigenproblem.
pub struct GaussHermite {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussHermite {
    pub fn new(n: usize) -> Self {
        let mut jacobi = DMatrix::zeros(n, n);
        for k in 1..n {
            let b = (k as f64 / 2.0).sqrt();
            jacobi[(k - 1, k)] = b;
            jacobi[(k, k - 1)] = b;
        }
        let eig = SymmetricEigen::new(jacobi);
        let nodes = eig.eigenvalues.iter().copied().collect();
        let weights = (0..n)
            .map(|i| PI.sqrt() * eig.eigenvectors[(0, i)].powi(2))
            .collect();
        GaussHermite { nodes, weights }
    }

    /// ∫ f(x) exp(-p (x - c)²) dx
    pub fn integrate(&self, p: f64, c: f64, f: impl Fn(f64) -> f64) -> f64 {
        let s = p.sqrt();
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(c + x / s))
            .sum::<f64>()
            / s
    }
}

/// ∫₀^∞ f(t) dt through t = τ/(1-τ) and composite 16-point Gauss-Legendre
/// on τ ∈ [0, 1], doubling the panel count until two levels agree.
pub fn integrate_half_line(f: impl Fn(f64) -> f64, tol: f64) -> f64 {
    let g = |tau: f64| {
        if tau >= 1.0 {
            return 0.0;
        }
        let t = tau / (1.0 - tau);
        f(t) / ((1.0 - tau) * (1.0 - tau))
    };
    let mut prev = composite_legendre(&g, 0.0, 1.0, 4);
    let mut panels = 8;
    loop {
        let cur = composite_legendre(&g, 0.0, 1.0, panels);
        if (cur - prev).abs() < tol || panels >= 1 << 12 {
            return cur;
        }
        prev = cur;
        panels *= 2;
    }
}

const GL_NODES: [f64; 8] = [
    0.0950125098376374,
    0.2816035507792589,
    0.4580167776572274,
    0.6178762444026438,
    0.7554044083550030,
    0.8656312023878318,
    0.9445750230732326,
    0.9894009349916499,
];
const GL_WEIGHTS: [f64; 8] = [
    0.1894506104550685,
    0.1826034150449236,
    0.1691565193950025,
    0.1495959888165767,
    0.1246289712555339,
    0.0951585116824928,
    0.0622535239386479,
    0.0271524594117541,
];

pub fn composite_legendre(f: &impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    let mut s = 0.0;
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        for (x, w) in GL_NODES.iter().zip(GL_WEIGHTS) {
            s += w * (f(mid + 0.5 * h * x) + f(mid - 0.5 * h * x));
        }
    }
    s * 0.5 * h
}

/// exp(-a(x-A)²) exp(-b(x-B)²) = k exp(-p(x-P)²)
fn combine(a: f64, ca: f64, b: f64, cb: f64) -> (f64, f64, f64) {
    let p = a + b;
    (
        p,
        (a * ca + b * cb) / p,
        (-a * b / p * (ca - cb).powi(2)).exp(),
    )
}

fn pw(x: f64, l: u32) -> f64 {
    x.powi(l as i32)
}

pub struct IntegralOracle {
    gh: GaussHermite,
    pub t_tol: f64,
}

impl Default for IntegralOracle {
    fn default() -> Self {
        IntegralOracle {
            gh: GaussHermite::new(6),
            t_tol: 1e-13,
        }
    }
}

impl IntegralOracle {
    pub fn overlap(&self, a: &ContractedGaussian, b: &ContractedGaussian) -> f64 {
        let mut total = 0.0;
        for pa in &a.primitives {
            for pb in &b.primitives {
                let mut prod = pa.coefficient * pb.coefficient;
                for k in 0..3 {
                    let (la, lb) = (a.angular_momentum[k], b.angular_momentum[k]);
                    let (ca, cb) = (a.center[k], b.center[k]);
                    let (p, c, kk) = combine(pa.exponent, ca, pb.exponent, cb);
                    prod *= kk * self.gh.integrate(p, c, |x| pw(x - ca, la) * pw(x - cb, lb));
                }
                total += prod;
            }
        }
        total
    }

    pub fn kinetic(&self, a: &ContractedGaussian, b: &ContractedGaussian) -> f64 {
        let mut total = 0.0;
        for pa in &a.primitives {
            for pb in &b.primitives {
                let beta = pb.exponent;
                let mut s = [0.0; 3];
                let mut d2 = [0.0; 3];
                for k in 0..3 {
                    let (la, lb) = (a.angular_momentum[k], b.angular_momentum[k]);
                    let (ca, cb) = (a.center[k], b.center[k]);
                    let (p, c, kk) = combine(pa.exponent, ca, beta, cb);
                    s[k] = kk * self.gh.integrate(p, c, |x| pw(x - ca, la) * pw(x - cb, lb));
                    // second derivative of (x-B)^l exp(-β(x-B)²), Gaussian factored out
                    let second = |x: f64| {
                        let u = x - cb;
                        let mut v = -2.0 * beta * (2 * lb + 1) as f64 * pw(u, lb)
                            + 4.0 * beta * beta * pw(u, lb + 2);
                        if lb >= 2 {
                            v += (lb * (lb - 1)) as f64 * pw(u, lb - 2);
                        }
                        v
                    };
                    d2[k] = kk * self.gh.integrate(p, c, |x| pw(x - ca, la) * second(x));
                }
                total += pa.coefficient
                    * pb.coefficient
                    * -0.5
                    * (d2[0] * s[1] * s[2] + s[0] * d2[1] * s[2] + s[0] * s[1] * d2[2]);
            }
        }
        total
    }

    /// Uses 1/|r - C| = (2/√π) ∫₀^∞ exp(-t²|r - C|²) dt.
    pub fn nuclear_attraction(
        &self,
        a: &ContractedGaussian,
        b: &ContractedGaussian,
        nuclei: &[Nucleus],
    ) -> f64 {
        let integrand = |t: f64| {
            let t2 = t * t;
            let mut total = 0.0;
            for pa in &a.primitives {
                for pb in &b.primitives {
                    for nuc in nuclei {
                        let mut prod = pa.coefficient * pb.coefficient * nuc.charge as f64;
                        for k in 0..3 {
                            let (la, lb) = (a.angular_momentum[k], b.angular_momentum[k]);
                            let (ca, cb) = (a.center[k], b.center[k]);
                            let (p, c, kk) = combine(pa.exponent, ca, pb.exponent, cb);
                            let (q, cq, kq) = combine(p, c, t2, nuc.position[k]);
                            prod *= kk
                                * kq
                                * self
                                    .gh
                                    .integrate(q, cq, |x| pw(x - ca, la) * pw(x - cb, lb));
                        }
                        total += prod;
                    }
                }
            }
            total
        };
        -2.0 / PI.sqrt() * integrate_half_line(integrand, self.t_tol)
    }

    /// (ab|cd) through the same Gaussian representation of 1/r₁₂; for each t
    /// the x, y, z factors are two-dimensional Gaussian integrals done as
    /// nested Gauss-Hermite rules.
    pub fn eri(
        &self,
        a: &ContractedGaussian,
        b: &ContractedGaussian,
        c: &ContractedGaussian,
        d: &ContractedGaussian,
    ) -> f64 {
        let integrand = |t: f64| {
            let t2 = t * t;
            let mut total = 0.0;
            for pa in &a.primitives {
                for pb in &b.primitives {
                    for pc in &c.primitives {
                        for pd in &d.primitives {
                            let mut prod =
                                pa.coefficient * pb.coefficient * pc.coefficient * pd.coefficient;
                            for k in 0..3 {
                                let (la, lb, lc, ld) = (
                                    a.angular_momentum[k],
                                    b.angular_momentum[k],
                                    c.angular_momentum[k],
                                    d.angular_momentum[k],
                                );
                                let (xa, xb, xc, xd) =
                                    (a.center[k], b.center[k], c.center[k], d.center[k]);
                                let (p, cp, kp) = combine(pa.exponent, xa, pb.exponent, xb);
                                let (q, cq, kq) = combine(pc.exponent, xc, pd.exponent, xd);
                                // inner x2 integral for fixed x1, as a function of x1,
                                // without the exp(-μ(x1 - Q)²) factor
                                let qt = q + t2;
                                let mu = q * t2 / qt;
                                let inner = |x1: f64| {
                                    let center = (q * cq + t2 * x1) / qt;
                                    self.gh.integrate(qt, center, |x2| {
                                        pw(x2 - xc, lc) * pw(x2 - xd, ld)
                                    })
                                };
                                let (po, co, ko) = combine(p, cp, mu, cq);
                                prod *= kp
                                    * kq
                                    * ko
                                    * self.gh.integrate(po, co, |x1| {
                                        pw(x1 - xa, la) * pw(x1 - xb, lb) * inner(x1)
                                    });
                            }
                            total += prod;
                        }
                    }
                }
            }
            total
        };
        2.0 / PI.sqrt() * integrate_half_line(integrand, self.t_tol)
    }
}

/// Random normalized s or p contraction with 1-3 primitives.
pub fn random_sp_function(rng: &mut impl Rng) -> ContractedGaussian {
    let center = [
        rng.gen_range(-1.5..1.5),
        rng.gen_range(-1.5..1.5),
        rng.gen_range(-1.5..1.5),
    ];
    let ang = match rng.gen_range(0..4) {
        0 => [0, 0, 0],
        1 => [1, 0, 0],
        2 => [0, 1, 0],
        _ => [0, 0, 1],
    };
    let n_prim = rng.gen_range(1..=3);
    let raw: Vec<(f64, f64)> = (0..n_prim)
        .map(|_| {
            let exponent = 10f64.powf(rng.gen_range(-1.0..1.0));
            (exponent, rng.gen_range(0.1..1.0))
        })
        .collect();
    ContractedGaussian::new(center, ang, &raw)
}
