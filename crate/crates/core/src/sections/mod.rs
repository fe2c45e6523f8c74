//! Finite sections in the monomial basis of `H^2` and closed-form block formulas.

pub mod foguel;
pub mod matrix;
pub mod toeplitz;

pub use foguel::{
    compress_block2x2, foguel_hankel, poly_calculus, power_closed_form, resolvent_section, FoguelHankelSpec,
};
pub use matrix::{matmul, SectionMatrix, Structure};
pub use toeplitz::{analytic_toeplitz, coanalytic_toeplitz, hankel_section, hilbert_matrix};
