//! Test-only oracles. Nothing here calls into the Hermite-expansion or Boys
//! code paths of the library; the integrals are evaluated by quadrature of
//! the defining expressions.
#![allow(dead_code)]

pub mod quadrature;
