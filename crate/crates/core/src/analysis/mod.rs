//! Function-theoretic measurements on the disc and on the segment `(0, 1)`.

pub mod bloch;
pub mod carleson;
pub mod hardy;
pub mod pairing;
pub mod quadrature;
pub mod schwarz;

pub use bloch::bloch_norm_estimate;
pub use carleson::{carleson_box_average, luecking_quantity, power_density, LueckingReport, LUECKING_CUTOFF};
pub use hardy::{area_weight, coefficient_inner_product, hardy_inner_product_quadrature, weight_positivity};
pub use pairing::{fejer_riesz_check, hilbert_pairing_check, v_phi_coefficients, FejerRiesz, VPhiExpansion};
pub use quadrature::{ArcBox, QuadratureSpec, Scheme};
pub use schwarz::{schwarz_pick_check, SchwarzPickReport, DEFAULT_SEED};
