//! Generalized Morse potential toolkit.
//!
//! The potential `V(x) = v1·exp(−2αx) − v2·exp(−αx)` is handled over
//! complex parameters, so the Hermitian, PT-symmetric and
//! non-PT-symmetric non-Hermitian families share one code path. The
//! crate provides:
//!
//! - [`potential`]: the model, its evaluation and symmetry classification;
//! - [`preset`]: named parameter families behind a registry;
//! - [`duru_map`]: the map onto a planar oscillator in parametric time;
//! - [`spectrum`] and [`wavefn`]: closed-form levels and wave functions;
//! - [`coherent`]: parametric-time coherent states;
//! - [`oracle`]: an independent finite-difference eigen solver;
//! - [`validate`] and [`export`]: validation runs and file formats.

pub mod coherent;
pub mod config;
pub mod duru_map;
pub mod error;
pub mod export;
pub mod grid;
pub mod numeric;
pub mod oracle;
pub mod potential;
pub mod preset;
pub mod spectrum;
pub mod validate;
pub mod wavefn;

pub use error::{Error, Result};
pub use potential::{MorseParams, SymmetryClass};
pub use spectrum::EnergyLevel;
