//! Finite-section laboratory for generalized Foguel–Hankel operators
//! `[[M*_{tilde phi}, J H_f], [0, M_phi]]` on `H^2 ⊕ H^2`.
//!
//! Everything is represented in the monomial basis of the Hardy space:
//! symbols by their Taylor coefficients ([`symbols`]), operators by dense
//! finite sections ([`sections`]), and measurements (norms, power growth,
//! Kreiss scans, function-theoretic checks) live in [`spectral`] and
//! [`analysis`]. [`harness`] runs named experiments and backs the CLI.

pub mod analysis;
pub mod error;
pub mod harness;
pub mod report;
pub mod sections;
pub mod spectral;
pub mod symbols;
pub mod text;

pub use error::{Error, Result};
pub use num_complex::Complex64;
