use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{quantity} = {value} is out of range: {reason}")]
    Domain {
        quantity: &'static str,
        value: f64,
        reason: String,
    },

    #[error("element {0} is not in the STO-3G table")]
    UnsupportedElement(String),

    #[error("angular momentum l = {0} is above p; only s and p shells are supported")]
    UnsupportedAngularMomentum(u32),

    #[error("overlap matrix is numerically singular (condition number {0:.3e})")]
    LinearDependence(f64),

    #[error("SCF did not converge in {0} iterations")]
    ScfNotConverged(usize),

    #[error("{0} electrons cannot form a closed shell")]
    OddElectronCount(usize),

    #[error("qubit index {index} out of range for a {n_qubits}-qubit register")]
    QubitIndex { index: usize, n_qubits: usize },

    #[error("expected {expected} circuit parameters, got {got}")]
    ParameterCount { expected: usize, got: usize },

    #[error("Jordan-Wigner expansion left an imaginary coefficient {imag:e} on {label}")]
    ImaginaryCoefficient { label: String, imag: f64 },

    #[error("dense diagonalization of {0} qubits exceeds the 12-qubit budget")]
    TooManyQubits(usize),

    #[error("VQE energy became non-finite at iteration {0}")]
    Divergence(usize),

    #[error("PES scan failed at z = {z} Å: {source}")]
    Scan {
        z: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("dataset: {0}")]
    Dataset(String),

    #[error("unknown variant {0:?}")]
    UnknownVariant(String),

    #[error("need at least 3 variants with experimental activity, got {0}")]
    InsufficientData(usize),

    #[error("cannot parse Hamiltonian line {line}: {reason}")]
    HamiltonianFormat { line: usize, reason: String },

    #[error("config: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn domain(quantity: &'static str, value: f64, reason: impl Into<String>) -> Self {
        Error::Domain {
            quantity,
            value,
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Short machine-readable tag used in error manifests and CLI output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain { .. } => "domain",
            Error::UnsupportedElement(_) => "unsupported_element",
            Error::UnsupportedAngularMomentum(_) => "unsupported_angular_momentum",
            Error::LinearDependence(_) => "linear_dependence",
            Error::ScfNotConverged(_) => "scf_not_converged",
            Error::OddElectronCount(_) => "odd_electron_count",
            Error::QubitIndex { .. } => "qubit_index",
            Error::ParameterCount { .. } => "parameter_count",
            Error::ImaginaryCoefficient { .. } => "imaginary_coefficient",
            Error::TooManyQubits(_) => "too_many_qubits",
            Error::Divergence(_) => "divergence",
            Error::Scan { .. } => "scan",
            Error::Dataset(_) => "dataset",
            Error::UnknownVariant(_) => "unknown_variant",
            Error::InsufficientData(_) => "insufficient_data",
            Error::HamiltonianFormat { .. } => "hamiltonian_format",
            Error::Config(_) => "config",
            Error::Io { .. } => "io",
            Error::Json(_) => "json",
            Error::Csv(_) => "csv",
        }
    }
}
