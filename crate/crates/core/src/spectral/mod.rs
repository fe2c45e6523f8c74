//! Norm, power-growth, resolvent and Kreiss measurements on finite sections.

pub mod kreiss;
pub mod norm;
pub mod operator;
pub mod powers;
pub mod resolvent;
pub mod witness;

pub use kreiss::{kreiss_convergence, kreiss_scan, KreissSchedule};
pub use norm::spectral_norm;
pub use operator::LinearOperator;
pub use powers::{power_norm_sequence, PowerNormSequence};
pub use resolvent::{
    dense_resolvent_norm, pseudospectrum_grid, resolvent_norm, resolvent_norm_dense, ComplexBox, PseudospectrumGrid,
};
pub use witness::{hilbert_kreiss_witness, kreiss_lower_witness};
