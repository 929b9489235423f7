//! Fock-space numerics for squeezed coherent light built by alternating
//! displacement and squeezing, together with the photonic-crystal design
//! chain that sets its parameters and a beam-splitter entanglement test.
//!
//! Every numerical routine is generic over [`Real`] (`f32` or `f64`). The
//! `*64` aliases below fix the scalar for the common double-precision case.

pub mod cli;
pub mod crystal_design;
pub mod entanglement;
pub mod error;
pub mod fock_core;
pub mod scalar;
pub mod trotter;

pub use error::{Error, Result};
pub use scalar::{Real, C};

pub type FockVector64 = fock_core::FockVector<f64>;
pub type FockVector32 = fock_core::FockVector<f32>;
pub type OperatorMatrix64 = fock_core::OperatorMatrix<f64>;
pub type OperatorMatrix32 = fock_core::OperatorMatrix<f32>;
pub type SqueezeParam64 = fock_core::SqueezeParam<f64>;
pub type SqueezeParam32 = fock_core::SqueezeParam<f32>;
pub type CrystalSpec64 = crystal_design::CrystalSpec<f64>;
pub type ResonatorScenario64 = crystal_design::ResonatorScenario<f64>;
pub type DesignReport64 = crystal_design::DesignReport<f64>;
pub type CriterionResult64 = entanglement::CriterionResult<f64>;
