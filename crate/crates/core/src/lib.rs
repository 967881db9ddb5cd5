//! Analytic continuation of truncated power-series germs.
//!
//! The engine is generic over the real scalar type (`f32` or `f64`); `f64` aliases are exported
//! at the crate root for everyday use.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // negated comparisons also reject NaN
#![allow(clippy::needless_range_loop)]

pub mod blaschke;
pub mod continuation;
pub mod error;
pub mod gamma;
pub mod io;
pub mod lacunary;
pub mod laplace;
pub mod lewy;
pub mod quadrature;
pub mod sampling;
pub mod scalar;
pub mod series;

pub use num_complex::Complex;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Complex64 = Complex<f64>;
pub type Germ64 = series::Germ<f64>;
pub type PathSpec64 = continuation::PathSpec<f64>;
pub type StepPolicy64 = continuation::StepPolicy<f64>;
pub type ContinuationTrace64 = continuation::ContinuationTrace<f64>;
pub type QuadratureSpec64 = lewy::QuadratureSpec<f64>;
pub type ContourSpec64 = laplace::ContourSpec<f64>;
pub type ZeroSequence64 = blaschke::ZeroSequence<f64>;
