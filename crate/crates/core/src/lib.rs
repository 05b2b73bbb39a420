//! Closed-form spectrum and eigenfunctions of the one-dimensional
//! Klein-Gordon oscillator, together with an independent finite-difference
//! eigenvalue check and a small command-line front end.
//!
//! Energies are reported dimensionless, `Ē = E / mc²`, as functions of the
//! strength parameter `b = ħω / mc²`.

pub mod cli;
pub mod error;
pub mod oracle;
pub mod params;
pub mod specfun;
pub mod spectrum;
pub mod wavefn;

pub use error::{KgoError, Result};
pub use params::{DimensionlessEnergy, OscillatorParams};
