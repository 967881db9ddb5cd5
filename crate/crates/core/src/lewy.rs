//! Lewy's integral `h(z) = int_0^inf exp[-z t - (log t)^2 / (4 pi i)] dt`, its continuation by
//! rotating the integration ray, and the loop that returns `h'`.
//!
//! With `t = exp(s - i theta)` the ray sits at argument `-theta`, which keeps the integral valid
//! on the half-plane `Re(z exp(-i theta)) > 0`. Turning `theta` from 0 to `2 pi` carries `z`
//! once counterclockwise around the origin and multiplies the integrand by `-t`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::quadrature::{gauss_legendre_composite, trapezoid_doubling_scalar, trapezoid_fixed};
use crate::scalar::{from_usize, lit, to_f64, Real};

/// Truncation and refinement settings for the substituted integral over `s`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureSpec<T> {
    pub s_min: T,
    pub s_max: T,
    pub nodes: usize,
    pub refine_tol: T,
    pub max_doublings: usize,
}

impl<T: Real> Default for QuadratureSpec<T> {
    fn default() -> Self {
        Self { s_min: lit(-40.0), s_max: lit(12.0), nodes: 4096, refine_tol: lit(1e-10), max_doublings: 6 }
    }
}

impl<T: Real> QuadratureSpec<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.s_min < self.s_max) {
            return Err(Error::InvalidInput("s_min must be below s_max".into()));
        }
        if self.nodes < 64 {
            return Err(Error::InvalidInput("at least 64 quadrature nodes are required".into()));
        }
        if !(self.refine_tol > T::zero()) {
            return Err(Error::InvalidInput("refine_tol must be positive".into()));
        }
        Ok(())
    }
}

/// Value of the continued integral for a given accumulated rotation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SectorEvaluation<T> {
    pub theta: T,
    pub value: Complex<T>,
    pub est_error: T,
}

/// Overlap check between consecutive sectors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SectorOverlap<T> {
    pub theta_from: T,
    pub theta_to: T,
    pub witness: Complex<T>,
    pub mismatch: T,
}

/// Outcome of [`lewy_continue_loop`].
#[derive(Clone, Debug, PartialEq)]
pub struct LoopContinuation<T> {
    pub result: SectorEvaluation<T>,
    pub overlaps: Vec<SectorOverlap<T>>,
}

fn integrand<T: Real>(s: T, z: Complex<T>, theta: T) -> Complex<T> {
    let w = Complex::new(s, -theta);
    let quarter = Complex::new(T::zero(), T::one() / (lit::<T>(4.0) * T::PI()));
    (-z * w.exp() + quarter * w * w + w).exp()
}

fn derivative_integrand<T: Real>(s: T, z: Complex<T>) -> Complex<T> {
    let quarter = Complex::new(T::zero(), T::one() / (lit::<T>(4.0) * T::PI()));
    let w = Complex::new(s, T::zero());
    -(-z * w.exp() + quarter * w * w + w * lit::<T>(2.0)).exp()
}

fn check_sector<T: Real>(z: Complex<T>, theta: T) -> Result<()> {
    if (z * Complex::from_polar(T::one(), -theta)).re > T::zero() {
        Ok(())
    } else {
        Err(Error::SectorViolation { re: to_f64(z.re), im: to_f64(z.im), theta: to_f64(theta) })
    }
}

/// Evaluates the integral along the ray rotated by `theta`.
pub fn lewy_eval<T: Real>(z: Complex<T>, theta: T, q: &QuadratureSpec<T>) -> Result<SectorEvaluation<T>> {
    q.validate()?;
    check_sector(z, theta)?;
    let quad = trapezoid_doubling_scalar(
        |s| integrand(s, z, theta),
        q.s_min,
        q.s_max,
        q.nodes,
        q.refine_tol,
        q.max_doublings,
        "Lewy integral",
    )?;
    Ok(SectorEvaluation { theta, value: quad.value, est_error: quad.est_error })
}

/// Single trapezoid pass with a fixed node count, without refinement.
pub fn lewy_eval_fixed<T: Real>(z: Complex<T>, theta: T, s_min: T, s_max: T, nodes: usize) -> Result<Complex<T>> {
    check_sector(z, theta)?;
    Ok(trapezoid_fixed(|s| integrand(s, z, theta), s_min, s_max, nodes))
}

/// `int_0^inf (-t) exp[-z t - (log t)^2 / (4 pi i)] dt`, the derivative of `h` on `Re z > 0`.
pub fn lewy_derivative_direct<T: Real>(z: Complex<T>, q: &QuadratureSpec<T>) -> Result<Complex<T>> {
    q.validate()?;
    check_sector(z, T::zero())?;
    let quad = trapezoid_doubling_scalar(
        |s| derivative_integrand(s, z),
        q.s_min,
        q.s_max,
        q.nodes,
        q.refine_tol,
        q.max_doublings,
        "Lewy derivative integral",
    )?;
    Ok(quad.value)
}

/// Rotates the ray from 0 to `total_rotation` in `n_steps` equal increments, checking that
/// consecutive sectors agree at the bisector of their boundary directions on `|z| = |z0|`.
pub fn lewy_continue<T: Real>(
    z0: Complex<T>,
    total_rotation: T,
    n_steps: usize,
    q: &QuadratureSpec<T>,
) -> Result<LoopContinuation<T>> {
    q.validate()?;
    if total_rotation == T::zero() {
        return Ok(LoopContinuation { result: lewy_eval(z0, T::zero(), q)?, overlaps: Vec::new() });
    }
    if n_steps == 0 {
        return Err(Error::InvalidInput("at least one rotation step is required".into()));
    }
    let increment = total_rotation / from_usize::<T>(n_steps);
    if !(increment.abs() < T::FRAC_PI_2()) {
        return Err(Error::InvalidInput("each rotation increment must stay below pi/2".into()));
    }
    let tol = lit::<T>(10.0) * q.refine_tol;
    let radius = z0.norm();
    let mut overlaps = Vec::with_capacity(n_steps);
    for j in 1..=n_steps {
        let theta_from = increment * from_usize::<T>(j - 1);
        let theta_to = increment * from_usize::<T>(j);
        let witness = Complex::from_polar(radius, (theta_from + theta_to) / lit(2.0));
        let before = lewy_eval(witness, theta_from, q)?;
        let after = lewy_eval(witness, theta_to, q)?;
        let mismatch = (after.value - before.value).norm();
        if mismatch > tol {
            return Err(Error::OverlapMismatch { theta: to_f64(theta_to), mismatch: to_f64(mismatch) });
        }
        overlaps.push(SectorOverlap { theta_from, theta_to, witness, mismatch });
    }
    Ok(LoopContinuation { result: lewy_eval(z0, total_rotation, q)?, overlaps })
}

/// One counterclockwise loop: the returned value is the continued function at `z0`.
pub fn lewy_continue_loop<T: Real>(z0: Complex<T>, n_steps: usize, q: &QuadratureSpec<T>) -> Result<LoopContinuation<T>> {
    check_sector(z0, T::zero())?;
    if n_steps < 5 {
        return Err(Error::InvalidInput("a full loop needs at least 5 rotation steps".into()));
    }
    lewy_continue(z0, lit::<T>(2.0) * T::PI(), n_steps, q)
}

/// Integral of the integrand's modulus over the arc `R exp(i t eta)`, `t` in `[0, 1]`, that closes
/// the contour between the real ray and the ray rotated by `eta`.
pub fn contour_shift_check<T: Real>(radius: T, eta: T, z: Complex<T>) -> Result<T> {
    if !(radius > T::zero()) {
        return Err(Error::InvalidInput("arc radius must be positive".into()));
    }
    if eta == T::zero() {
        return Ok(T::zero());
    }
    if !(eta > T::zero() && eta < T::FRAC_PI_2()) {
        return Err(Error::InvalidInput("eta must lie in (0, pi/2)".into()));
    }
    check_sector(z, T::zero())?;
    check_sector(z, eta)?;
    let rotation = Complex::from_polar(T::one(), -eta);
    let quarter = Complex::new(T::zero(), T::one() / (lit::<T>(4.0) * T::PI()));
    let log_r = radius.ln();
    let modulus = |t: T| {
        let u = Complex::from_polar(radius, t * eta);
        let shifted_log = Complex::new(log_r, (t - T::one()) * eta);
        let exponent = -z * rotation * u + quarter * shifted_log * shifted_log;
        exponent.exp().norm() * radius * eta
    };
    Ok(gauss_legendre_composite(modulus, T::zero(), T::one(), 32, 16))
}
