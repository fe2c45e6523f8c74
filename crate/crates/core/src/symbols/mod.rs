//! Analytic symbols on the unit disc: coefficient rules, evaluation, the catalog.

pub mod arith;
pub mod catalog;
pub mod compose;
pub mod selfmap;
pub mod series;

pub use catalog::{catalog, resolve, resolve_map, resolve_series, CatalogEntry};
pub use compose::compose_series;
pub use selfmap::{radial_limsup, SelfMap};
pub use series::{CoefficientRule, PowerSeries, EVAL_EPSILON};
