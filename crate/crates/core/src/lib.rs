pub mod chem;
pub mod error;
pub mod integrals;
pub mod kinetics;
pub mod qubit;
pub mod report;
pub mod scf;
pub mod variants;
pub mod vqe;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/model.md")]
    mod model {}
    #[doc = include_str!("../../../book/src/qubits.md")]
    mod qubits {}
    #[doc = include_str!("../../../book/src/vqe.md")]
    mod vqe {}
    #[doc = include_str!("../../../book/src/kinetics.md")]
    mod kinetics {}
    #[doc = include_str!("../../../book/src/variants.md")]
    mod variants {}
    #[doc = include_str!("../../../book/src/pipeline.md")]
    mod pipeline {}
}
