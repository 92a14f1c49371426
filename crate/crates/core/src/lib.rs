//! Boolean-function spectra and Forrelation-based quantum circuits.
//!
//! - [`boolfn`]: truth tables and the special functions used as oracles.
//! - [`spectra`]: Walsh and correlation spectra, exact Forrelation values.
//! - [`qsim`]: dense statevector simulator.
//! - [`circuits`]: Deutsch–Jozsa, Forrelation and cross-correlation circuits.
//! - [`protocols`]: sampling comparisons, amplification, estimation, checkers.
//! - [`cli`]: command implementations behind the `forrel` binary.

pub mod bits;
pub mod boolfn;
pub mod circuits;
pub mod cli;
pub mod error;
pub mod protocols;
pub mod qsim;
pub mod spectra;

pub use error::{Error, Result};
