//! Truncated power-series germs: evaluation, differentiation, radius estimation and named examples.

mod germ;
mod named;
pub mod ops;
mod radius;

pub use germ::{derivative_germ, eval_germ, eval_germ_unguarded, guard_radius, Germ, EVAL_GUARD};
pub use named::{make_named_germ, NamedGerm};
pub use radius::{estimate_radius, working_radius, RadiusEstimate, MIN_RADIUS_ORDER};
