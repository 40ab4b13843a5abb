use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::integrals::IntegralTables;

const MAX_OVERLAP_CONDITION: f64 = 1e10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScfOptions {
    pub max_iter: usize,
    /// Fraction of the previous density mixed into each new density.
    pub density_damping: f64,
    pub energy_threshold: f64,
    pub density_threshold: f64,
    /// DIIS subspace size; 0 disables DIIS.
    pub diis_subspace: usize,
    /// Rounds of internal stability analysis after convergence. Each round
    /// that finds a negative orbital-Hessian mode restarts the SCF from
    /// orbitals rotated along it. 0 disables the check.
    #[serde(default)]
    pub stability_rounds: usize,
}

impl Default for ScfOptions {
    fn default() -> Self {
        ScfOptions {
            max_iter: 200,
            density_damping: 0.3,
            energy_threshold: 1e-8,
            density_threshold: 1e-6,
            diis_subspace: 6,
            stability_rounds: 4,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ScfResult {
    /// AO→MO coefficients, one MO per column, ordered by orbital energy.
    pub mo_coefficients: DMatrix<f64>,
    pub mo_energies: DVector<f64>,
    pub energy_total: f64,
    pub energy_electronic: f64,
    pub nuclear_repulsion: f64,
    pub n_occupied: usize,
    pub converged: bool,
    pub n_iterations: usize,
    /// Total energy after every iteration.
    pub energy_history: Vec<f64>,
}

impl ScfResult {
    /// Closed-shell density D = 2 C_occ C_occᵀ.
    pub fn density(&self) -> DMatrix<f64> {
        density(&self.mo_coefficients, self.n_occupied)
    }
}

fn density(c: &DMatrix<f64>, n_occ: usize) -> DMatrix<f64> {
    let occ = c.columns(0, n_occ);
    2.0 * &occ * occ.transpose()
}

/// Two-electron part of the Fock matrix, G_μν = Σ D_λσ [(μν|λσ) - ½(μλ|νσ)].
fn two_electron_fock(tables: &IntegralTables, d: &DMatrix<f64>) -> DMatrix<f64> {
    let n = tables.n_basis();
    let eri = &tables.eri;
    DMatrix::from_fn(n, n, |mu, nu| {
        let mut g = 0.0;
        for lam in 0..n {
            for sig in 0..n {
                g += d[(lam, sig)]
                    * (eri.chemist(mu, nu, lam, sig) - 0.5 * eri.chemist(mu, lam, nu, sig));
            }
        }
        g
    })
}

fn electronic_energy(d: &DMatrix<f64>, h: &DMatrix<f64>, f: &DMatrix<f64>) -> f64 {
    0.5 * d.component_mul(&(h + f)).sum()
}

/// Diagonalizes F in the orthogonal basis X and returns (ε, C) sorted by ε.
fn solve_roothaan(f: &DMatrix<f64>, x: &DMatrix<f64>) -> (DVector<f64>, DMatrix<f64>) {
    let fp = x.transpose() * f * x;
    let eig = SymmetricEigen::new(fp);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eps = DVector::from_iterator(order.len(), order.iter().map(|&i| eig.eigenvalues[i]));
    let cp = DMatrix::from_fn(f.nrows(), order.len(), |r, c| {
        eig.eigenvectors[(r, order[c])]
    });
    (eps, x * cp)
}

struct Diis {
    capacity: usize,
    focks: Vec<DMatrix<f64>>,
    errors: Vec<DMatrix<f64>>,
}

impl Diis {
    fn push(&mut self, f: DMatrix<f64>, e: DMatrix<f64>) {
        if self.focks.len() == self.capacity {
            self.focks.remove(0);
            self.errors.remove(0);
        }
        self.focks.push(f);
        self.errors.push(e);
    }

    fn extrapolate(&self) -> Option<DMatrix<f64>> {
        let m = self.focks.len();
        if m < 2 {
            return None;
        }
        let mut b = DMatrix::zeros(m + 1, m + 1);
        for i in 0..m {
            for j in 0..m {
                b[(i, j)] = self.errors[i].dot(&self.errors[j]);
            }
            b[(i, m)] = -1.0;
            b[(m, i)] = -1.0;
        }
        let mut rhs = DVector::zeros(m + 1);
        rhs[m] = -1.0;
        let coef = b.lu().solve(&rhs)?;
        let mut f = DMatrix::zeros(self.focks[0].nrows(), self.focks[0].ncols());
        for (c, fi) in coef.iter().zip(&self.focks) {
            f += *c * fi;
        }
        Some(f)
    }
}

/// Lowest eigenpair of the real singlet RHF orbital Hessian
/// H_ia,jb = δ_ij δ_ab (ε_a − ε_i) + 4(ia|jb) − (ib|ja) − (ij|ab).
/// The eigenvector comes back as an n_virt × n_occ matrix.
fn lowest_hessian_mode(
    tables: &IntegralTables,
    eps: &DVector<f64>,
    c: &DMatrix<f64>,
    n_occ: usize,
) -> (f64, DMatrix<f64>) {
    let n = c.ncols();
    let n_virt = n - n_occ;
    let mo = tables.eri.transform(c);
    let dim = n_occ * n_virt;
    let idx = |i: usize, a: usize| i * n_virt + (a - n_occ);
    let mut hess = DMatrix::zeros(dim, dim);
    for i in 0..n_occ {
        for a in n_occ..n {
            for j in 0..n_occ {
                for b in n_occ..n {
                    let mut v = 4.0 * mo.chemist(i, a, j, b)
                        - mo.chemist(i, b, j, a)
                        - mo.chemist(i, j, a, b);
                    if i == j && a == b {
                        v += eps[a] - eps[i];
                    }
                    hess[(idx(i, a), idx(j, b))] = v;
                }
            }
        }
    }
    let eig = SymmetricEigen::new(hess);
    let k = eig.eigenvalues.imin();
    let v = eig.eigenvectors.column(k);
    (
        eig.eigenvalues[k],
        DMatrix::from_fn(n_virt, n_occ, |a, i| v[idx(i, a + n_occ)]),
    )
}

/// C exp(K) with K_ai = step·κ_ai, K_ia = −K_ai.
fn rotate_orbitals(
    c: &DMatrix<f64>,
    kappa: &DMatrix<f64>,
    n_occ: usize,
    step: f64,
) -> DMatrix<f64> {
    let n = c.ncols();
    let mut k = DMatrix::zeros(n, n);
    for a in n_occ..n {
        for i in 0..n_occ {
            k[(a, i)] = step * kappa[(a - n_occ, i)];
            k[(i, a)] = -step * kappa[(a - n_occ, i)];
        }
    }
    c * k.exp()
}

const INSTABILITY_THRESHOLD: f64 = -1e-5;
/// (use DIIS, virtual level shift in Hartree) tried in turn until one converges.
const FALLBACKS: [(bool, f64); 3] = [(true, 0.0), (true, 0.5), (false, 1.0)];
const STABILITY_STEPS: [f64; 3] = [0.5, 1.0, 0.25];

struct Cycle {
    d: DMatrix<f64>,
    iterations: usize,
    converged: bool,
}

fn scf_cycle(
    tables: &IntegralTables,
    x: &DMatrix<f64>,
    h: &DMatrix<f64>,
    mut d: DMatrix<f64>,
    n_occ: usize,
    opts: &ScfOptions,
    (use_diis, shift): (bool, f64),
    history: &mut Vec<f64>,
) -> Cycle {
    let e_nn = tables.nuclear_repulsion;
    let s = &tables.overlap;
    let mut energy = f64::NAN;
    let mut diis = Diis {
        capacity: if use_diis { opts.diis_subspace } else { 0 },
        focks: Vec::new(),
        errors: Vec::new(),
    };
    for iter in 1..=opts.max_iter {
        let f = h + two_electron_fock(tables, &d);
        let e_new = electronic_energy(&d, h, &f) + e_nn;
        history.push(e_new);

        // Damping only until DIIS has a subspace: extrapolating Fock
        // matrices of damped densities stalls on symmetry-broken solutions.
        let extrapolated = if diis.capacity > 0 {
            let err = &f * &d * s - s * &d * &f;
            diis.push(f.clone(), x.transpose() * err * x);
            diis.extrapolate()
        } else {
            None
        };
        let damping = if extrapolated.is_some() {
            0.0
        } else {
            opts.density_damping
        };
        let mut f_solve = extrapolated.unwrap_or(f);
        if shift != 0.0 {
            // raise the virtual space: F + b (S − ½ S D S)
            f_solve += shift * (s - 0.5 * s * &d * s);
        }
        let (_, c) = solve_roothaan(&f_solve, x);
        let d_new = density(&c, n_occ);
        let d_next = (1.0 - damping) * &d_new + damping * &d;
        let delta_d = (&d_next - &d).amax();
        let delta_e = (e_new - energy).abs();
        d = d_next;
        energy = e_new;
        if delta_e < opts.energy_threshold && delta_d < opts.density_threshold {
            return Cycle {
                d,
                iterations: iter,
                converged: true,
            };
        }
    }
    Cycle {
        d,
        iterations: opts.max_iter,
        converged: false,
    }
}

struct Solution {
    eps: DVector<f64>,
    c: DMatrix<f64>,
    e_elec: f64,
}

/// Orbitals from the Fock matrix of `d`, with the energy recomputed from
/// exactly these orbitals.
fn finalize(
    tables: &IntegralTables,
    x: &DMatrix<f64>,
    h: &DMatrix<f64>,
    d: &DMatrix<f64>,
    n_occ: usize,
) -> Solution {
    let f = h + two_electron_fock(tables, d);
    let (eps, c) = solve_roothaan(&f, x);
    let d_final = density(&c, n_occ);
    let f_final = h + two_electron_fock(tables, &d_final);
    let e_elec = electronic_energy(&d_final, h, &f_final);
    Solution { eps, c, e_elec }
}

/// Restricted Hartree-Fock from a core-Hamiltonian guess.
///
/// If the iteration does not converge within `max_iter`, it is restarted
/// with a virtual level shift, then once more without DIIS. Exhausting these
/// is not an error: the result comes back with `converged = false` and
/// callers decide what to do with it. A converged
/// solution is checked for internal instabilities (see
/// [`ScfOptions::stability_rounds`]); a lower solution found that way
/// replaces it.
pub fn run_rhf(
    tables: &IntegralTables,
    n_electrons: usize,
    opts: &ScfOptions,
) -> Result<ScfResult> {
    if !n_electrons.is_multiple_of(2) {
        return Err(Error::OddElectronCount(n_electrons));
    }
    let n_occ = n_electrons / 2;
    let n = tables.n_basis();
    if n_occ > n {
        return Err(Error::domain(
            "n_electrons",
            n_electrons as f64,
            format!("{n} basis functions hold at most {} electrons", 2 * n),
        ));
    }

    let s_eig = SymmetricEigen::new(tables.overlap.clone());
    let (s_min, s_max) = (s_eig.eigenvalues.min(), s_eig.eigenvalues.max());
    let condition = if s_min > 0.0 {
        s_max / s_min
    } else {
        f64::INFINITY
    };
    if condition > MAX_OVERLAP_CONDITION {
        return Err(Error::LinearDependence(condition));
    }
    let inv_sqrt = DMatrix::from_diagonal(&s_eig.eigenvalues.map(|v| 1.0 / v.sqrt()));
    let x = &s_eig.eigenvectors * inv_sqrt * s_eig.eigenvectors.transpose();

    let h = tables.core_hamiltonian();
    let e_nn = tables.nuclear_repulsion;
    let (_, c0) = solve_roothaan(&h, &x);
    let mut history = Vec::new();
    let mut iterations = 0;
    let mut cycle = None;
    for strategy in FALLBACKS {
        let c = scf_cycle(
            tables,
            &x,
            &h,
            density(&c0, n_occ),
            n_occ,
            opts,
            strategy,
            &mut history,
        );
        iterations += c.iterations;
        let done = c.converged;
        cycle = Some(c);
        if done {
            break;
        }
    }
    let cycle = cycle.expect("at least one strategy");
    let converged = cycle.converged;
    let mut best = finalize(tables, &x, &h, &cycle.d, n_occ);

    if converged && n_occ < n {
        for _ in 0..opts.stability_rounds {
            let (lambda, kappa) = lowest_hessian_mode(tables, &best.eps, &best.c, n_occ);
            if lambda > INSTABILITY_THRESHOLD {
                break;
            }
            let mut improved = None;
            for step in STABILITY_STEPS {
                let c_rot = rotate_orbitals(&best.c, &kappa, n_occ, step);
                let mut trial_history = Vec::new();
                let trial = scf_cycle(
                    tables,
                    &x,
                    &h,
                    density(&c_rot, n_occ),
                    n_occ,
                    opts,
                    FALLBACKS[0],
                    &mut trial_history,
                );
                iterations += trial.iterations;
                history.extend(trial_history);
                if !trial.converged {
                    continue;
                }
                let sol = finalize(tables, &x, &h, &trial.d, n_occ);
                if sol.e_elec < best.e_elec - opts.energy_threshold {
                    improved = Some(sol);
                    break;
                }
            }
            match improved {
                Some(sol) => best = sol,
                None => break,
            }
        }
    }

    Ok(ScfResult {
        mo_coefficients: best.c,
        mo_energies: best.eps,
        energy_total: best.e_elec + e_nn,
        energy_electronic: best.e_elec,
        nuclear_repulsion: e_nn,
        n_occupied: n_occ,
        converged,
        n_iterations: iterations,
        energy_history: history,
    })
}
