//! Computational core for the explicit reciprocity law relating syntomic
//! Abel–Jacobi images of diagonal cycles to ordinary projections of
//! products of p-adic modular forms.
//!
//! The crate is organised bottom-up: [`localfield`] and [`linalg`] provide the
//! p-adic arithmetic, [`qexp`] and [`hida`] the q-expansion side, [`phin`] the
//! filtered (φ, N)-module side, [`det`] and [`cusp`] the algebra behind the
//! constant of the formula, and [`period`] ties them into one pipeline.

pub mod cusp;
pub mod det;
pub mod error;
pub mod hida;
pub mod ingest;
pub mod linalg;
pub mod localfield;
pub mod period;
pub mod phin;
pub mod qexp;

pub use error::{Error, Result};
