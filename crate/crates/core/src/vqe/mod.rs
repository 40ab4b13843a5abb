//! Statevector VQE: hardware-efficient ansatz, parameter-shift gradients, Adam.

mod ansatz;
mod observable;
mod optimizer;
mod statevector;

pub use ansatz::AnsatzSpec;
pub use observable::{expectation, CompiledObservable};
pub use optimizer::{
    parameter_shift_gradient, run_vqe, run_vqe_continued, run_vqe_from, EnergyFunction,
    OptimizerState, TraceEntry, VqeOptions, VqeTrace,
};
pub use statevector::Statevector;
