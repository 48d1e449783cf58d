//! Singular cotangent-bundle reduction on finite-dimensional exemplars and
//! a lattice Yang–Mills–Higgs simulator for the electroweak gauge group
//! `SU(2) × U(1)`.

pub mod error;
pub mod lattice;
pub mod liealg;
pub mod normalform;
pub mod oscillator;
pub mod strata;
pub mod checks;
pub mod ymh;

pub use error::{Error, Result};
