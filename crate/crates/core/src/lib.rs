//! Bound-state energies of the radial Schrödinger equation with a
//! position-dependent mass, computed as an expansion in powers of the Planck
//! constant about the classical circular orbit.
//!
//! The building blocks, bottom-up:
//!
//! * [`series`]: truncated power-series arithmetic
//! * [`models`]: mass and potential profiles, ordering parameters, Taylor data
//! * [`classical`]: orbit radius, zeroth energy, frequency and `C_0`
//! * [`recursion`]: the coefficient table `C_i^k` and energy corrections `E_k`
//! * [`coulomb_pdm`]: closed forms and level ordering for the Coulomb
//!   potential with a power-law mass
//! * [`oracle`]: a Numerov shooting eigensolver and a generic Laurent-series
//!   Riccati solver, used as independent checks
//! * [`table1`]: the benchmark configuration and its reference energies

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod classical;
pub mod coulomb_pdm;
pub mod error;
pub mod models;
pub mod oracle;
pub mod recursion;
pub mod series;
pub mod table1;

pub use classical::ClassicalPoint;
pub use error::{Error, Result};
pub use models::{AmbiguitySet, MassModel, PotentialModel, RadialProfile};
pub use recursion::{CentrifugalSplit, CorrectionTable, Problem, QuantumNumbers, SpectrumResult};
pub use series::TruncatedSeries;
