use std::f64::consts::FRAC_PI_2;
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::ansatz::AnsatzSpec;
use super::observable::CompiledObservable;
use crate::error::{Error, Result};
use crate::qubit::{exact_ground_state, PauliSum};

/// Adam with bias-corrected moments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizerState {
    pub theta: Vec<f64>,
    pub m: Vec<f64>,
    pub v: Vec<f64>,
    pub step_size: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
    pub iteration: u32,
}

impl OptimizerState {
    pub fn adam(theta: Vec<f64>, step_size: f64) -> Self {
        let n = theta.len();
        OptimizerState {
            theta,
            m: vec![0.0; n],
            v: vec![0.0; n],
            step_size,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
            iteration: 0,
        }
    }

    pub fn step(&mut self, grad: &[f64]) {
        self.iteration += 1;
        let t = self.iteration as i32;
        let c1 = 1.0 - self.beta1.powi(t);
        let c2 = 1.0 - self.beta2.powi(t);
        for (k, g) in grad.iter().enumerate() {
            self.m[k] = self.beta1 * self.m[k] + (1.0 - self.beta1) * g;
            self.v[k] = self.beta2 * self.v[k] + (1.0 - self.beta2) * g * g;
            let m_hat = self.m[k] / c1;
            let v_hat = self.v[k] / c2;
            self.theta[k] -= self.step_size * m_hat / (v_hat.sqrt() + self.epsilon);
        }
    }
}

/// E(θ) for a fixed Hamiltonian and ansatz, counting evaluations.
pub struct EnergyFunction<'a> {
    observable: CompiledObservable,
    spec: &'a AnsatzSpec,
    evaluations: usize,
}

impl<'a> EnergyFunction<'a> {
    pub fn new(h: &PauliSum, spec: &'a AnsatzSpec) -> Result<Self> {
        if h.n_qubits() != spec.n_qubits {
            return Err(Error::QubitIndex {
                index: h.n_qubits().max(spec.n_qubits) - 1,
                n_qubits: spec.n_qubits,
            });
        }
        Ok(EnergyFunction {
            observable: CompiledObservable::new(h),
            spec,
            evaluations: 0,
        })
    }

    pub fn energy(&mut self, theta: &[f64]) -> Result<f64> {
        self.evaluations += 1;
        Ok(self.observable.expectation(&self.spec.prepare(theta)?))
    }

    /// ∂E/∂θ_k = ½[E(θ + π/2 e_k) − E(θ − π/2 e_k)], exact for RY gates
    /// because each parameter enters exactly one rotation.
    pub fn gradient(&mut self, theta: &[f64]) -> Result<Vec<f64>> {
        let mut shifted = theta.to_vec();
        let mut grad = Vec::with_capacity(theta.len());
        for k in 0..theta.len() {
            shifted[k] = theta[k] + FRAC_PI_2;
            let plus = self.energy(&shifted)?;
            shifted[k] = theta[k] - FRAC_PI_2;
            let minus = self.energy(&shifted)?;
            shifted[k] = theta[k];
            grad.push(0.5 * (plus - minus));
        }
        Ok(grad)
    }

    pub fn evaluations(&self) -> usize {
        self.evaluations
    }
}

pub fn parameter_shift_gradient(
    h: &PauliSum,
    spec: &AnsatzSpec,
    theta: &[f64],
) -> Result<Vec<f64>> {
    EnergyFunction::new(h, spec)?.gradient(theta)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VqeOptions {
    pub iterations: usize,
    pub step_size: f64,
    pub seed: u64,
    /// Report the lowest energy seen instead of the last one.
    pub return_best: bool,
    /// Half-width of the uniform noise added to the zero initial angles.
    pub init_noise: f64,
    /// Also diagonalise H exactly and report the gap.
    pub exact_oracle: bool,
}

impl Default for VqeOptions {
    fn default() -> Self {
        VqeOptions {
            iterations: 25,
            step_size: 0.4,
            seed: 0,
            return_best: true,
            init_noise: 0.01,
            exact_oracle: false,
        }
    }
}

impl VqeOptions {
    /// Zeros plus U[−init_noise, init_noise] from a ChaCha stream keyed by `seed`.
    pub fn initial_theta(&self, n: usize) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        (0..n)
            .map(|_| {
                if self.init_noise > 0.0 {
                    rng.gen_range(-self.init_noise..=self.init_noise)
                } else {
                    0.0
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub iteration: usize,
    /// E(θ_k), Hartree, at the point where the gradient was taken.
    pub energy: f64,
    pub gradient_norm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VqeTrace {
    pub entries: Vec<TraceEntry>,
    pub final_theta: Vec<f64>,
    pub final_energy: f64,
    pub gap_to_exact: Option<f64>,
    /// Energy evaluations spent, gradient shifts included.
    pub n_evaluations: usize,
}

impl VqeTrace {
    pub fn energies(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.energy).collect()
    }

    pub fn best_energy(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.energy)
            .fold(f64::INFINITY, f64::min)
    }

    /// One JSON object per line: `{"iteration":..,"energy":..,"gradient_norm":..}`.
    pub fn write_json_lines<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for e in &self.entries {
            serde_json::to_writer(&mut out, e)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }
}

/// VQE from the seeded initial angles of `opts`.
pub fn run_vqe(h: &PauliSum, spec: &AnsatzSpec, opts: &VqeOptions) -> Result<VqeTrace> {
    run_vqe_from(h, spec, opts, opts.initial_theta(spec.n_parameters()))
}

/// VQE from explicit starting angles with fresh Adam moments.
pub fn run_vqe_from(
    h: &PauliSum,
    spec: &AnsatzSpec,
    opts: &VqeOptions,
    theta0: Vec<f64>,
) -> Result<VqeTrace> {
    Ok(run_vqe_continued(h, spec, opts, OptimizerState::adam(theta0, opts.step_size))?.0)
}

/// VQE continuing an existing optimizer trajectory; returns the trace and
/// the optimizer state after the last update, ready for the next geometry.
///
/// Trace entry k holds E(θ_k) and |∇E(θ_k)| before the k-th Adam update,
/// so the trace has exactly `opts.iterations` entries. With `return_best`
/// the result is the lowest trace entry and its angles; otherwise E(θ_N)
/// after the last update is evaluated and returned.
pub fn run_vqe_continued(
    h: &PauliSum,
    spec: &AnsatzSpec,
    opts: &VqeOptions,
    mut adam: OptimizerState,
) -> Result<(VqeTrace, OptimizerState)> {
    if opts.iterations == 0 {
        return Err(Error::domain(
            "iterations",
            0.0,
            "at least one iteration is required",
        ));
    }
    if adam.theta.len() != spec.n_parameters() {
        return Err(Error::ParameterCount {
            expected: spec.n_parameters(),
            got: adam.theta.len(),
        });
    }
    let mut f = EnergyFunction::new(h, spec)?;
    let mut entries = Vec::with_capacity(opts.iterations);
    let mut best = (f64::INFINITY, adam.theta.clone());
    for k in 0..opts.iterations {
        let energy = f.energy(&adam.theta)?;
        let grad = f.gradient(&adam.theta)?;
        let gradient_norm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
        if !energy.is_finite() || !gradient_norm.is_finite() {
            return Err(Error::Divergence(k));
        }
        if energy < best.0 {
            best = (energy, adam.theta.clone());
        }
        entries.push(TraceEntry {
            iteration: k,
            energy,
            gradient_norm,
        });
        adam.step(&grad);
    }
    let (final_energy, final_theta) = if opts.return_best {
        best
    } else {
        let e = f.energy(&adam.theta)?;
        if !e.is_finite() {
            return Err(Error::Divergence(opts.iterations));
        }
        (e, adam.theta.clone())
    };
    let gap_to_exact = if opts.exact_oracle {
        Some(final_energy - exact_ground_state(h)?.energy)
    } else {
        None
    };
    let trace = VqeTrace {
        entries,
        final_theta,
        final_energy,
        gap_to_exact,
        n_evaluations: f.evaluations(),
    };
    Ok((trace, adam))
}
