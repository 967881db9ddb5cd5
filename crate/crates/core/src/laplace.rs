//! The Laplace-type integral `G(z) = int_C exp(-2 pi i u z + i pi u^2) Gamma(u) du` along the line
//! `u = base + direction * t`, which solves `G(z + 1) = exp(-2 pi i z) G'(z) / (2 pi i)`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::gamma::gamma;
use crate::quadrature::{trapezoid_doubling, Quadrature};
use crate::scalar::{from_usize, lit, to_f64, Real};
use crate::series::Germ;

/// Largest `|Im z|` accepted by the integrals.
pub const STRIP_HALF_WIDTH: f64 = 2.0;
/// Relative tolerance of the node-doubling refinement.
pub const REFINE_TOL: f64 = 1e-10;
pub const MAX_DOUBLINGS: usize = 6;

/// Integration line `u = base + direction * t`, `t` in `[-half_extent, half_extent]`.
///
/// `half_extent` is measured in units of `direction`, so `du = direction dt`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContourSpec<T> {
    pub base: Complex<T>,
    pub direction: Complex<T>,
    pub half_extent: T,
    pub nodes: usize,
}

impl<T: Real> Default for ContourSpec<T> {
    fn default() -> Self {
        Self {
            base: Complex::new(T::one(), T::zero()),
            direction: Complex::new(T::one(), T::one()),
            half_extent: lit(6.0),
            nodes: 2049,
        }
    }
}

impl<T: Real> ContourSpec<T> {
    pub fn validate(&self) -> Result<()> {
        if self.direction.norm() == T::zero() {
            return Err(Error::InvalidInput("contour direction must be nonzero".into()));
        }
        if self.nodes < 129 || self.nodes.is_multiple_of(2) {
            return Err(Error::InvalidInput("contour node count must be odd and at least 129".into()));
        }
        if !(self.half_extent >= T::zero()) {
            return Err(Error::InvalidInput("half extent must be nonnegative".into()));
        }
        Ok(())
    }

    /// The same line translated by `shift`.
    pub fn translated(&self, shift: Complex<T>) -> Self {
        Self { base: self.base + shift, ..*self }
    }
}

/// One point of the functional-equation check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FunctionalEqReport<T> {
    pub z: Complex<T>,
    /// `G(z + 1)`.
    pub lhs: Complex<T>,
    /// `exp(-2 pi i z) G'(z) / (2 pi i)`.
    pub rhs: Complex<T>,
    pub rel_residual: T,
}

fn check_strip<T: Real>(z: Complex<T>) -> Result<()> {
    if z.im.abs() <= lit(STRIP_HALF_WIDTH) && z.re.is_finite() {
        Ok(())
    } else {
        Err(Error::DomainViolation(format!(
            "|Im z| must not exceed {STRIP_HALF_WIDTH}, got z = ({}, {})",
            to_f64(z.re),
            to_f64(z.im)
        )))
    }
}

fn two_pi_i<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), lit::<T>(2.0) * T::PI())
}

/// `exp(-2 pi i u z + i pi u^2) Gamma(u)`.
pub fn kernel<T: Real>(u: Complex<T>, z: Complex<T>) -> Result<Complex<T>> {
    let phase = -two_pi_i::<T>() * u * z + Complex::new(T::zero(), T::PI()) * u * u;
    Ok(phase.exp() * gamma(u)?)
}

/// Integrates `weights(u) * kernel(u, z) du` along the contour for several weights at once.
fn integrate<T: Real, W>(
    z: Complex<T>,
    c: &ContourSpec<T>,
    width: usize,
    weights: W,
    what: &'static str,
) -> Result<Quadrature<T, Vec<Complex<T>>>>
where
    W: Fn(Complex<T>) -> Vec<Complex<T>>,
{
    c.validate()?;
    check_strip(z)?;
    let zero = Complex::new(T::zero(), T::zero());
    if c.half_extent == T::zero() {
        return Ok(Quadrature { value: vec![zero; width], est_error: T::zero(), nodes: 0 });
    }
    let mut failure = None;
    let quad = trapezoid_doubling(
        |t| {
            let u = c.base + c.direction * t;
            match kernel(u, z) {
                Ok(k) => weights(u).into_iter().map(|w| w * k * c.direction).collect(),
                Err(e) => {
                    failure.get_or_insert(e);
                    vec![zero; width]
                }
            }
        },
        width,
        -c.half_extent,
        c.half_extent,
        c.nodes,
        lit(REFINE_TOL),
        MAX_DOUBLINGS,
        what,
    );
    match failure {
        Some(e) => Err(e),
        None => quad,
    }
}

/// `G(z)`.
pub fn laplace_g<T: Real>(z: Complex<T>, c: &ContourSpec<T>) -> Result<Complex<T>> {
    let one = Complex::new(T::one(), T::zero());
    Ok(integrate(z, c, 1, |_| vec![one], "Laplace integral")?.value[0])
}

/// `G'(z)`, by differentiating under the integral sign.
pub fn laplace_g_prime<T: Real>(z: Complex<T>, c: &ContourSpec<T>) -> Result<Complex<T>> {
    laplace_g_weighted(z, c, -two_pi_i::<T>())
}

/// `int_C (scale * u) kernel(u, z) du`; `scale = -2 pi i` gives `G'`.
pub fn laplace_g_weighted<T: Real>(z: Complex<T>, c: &ContourSpec<T>, scale: Complex<T>) -> Result<Complex<T>> {
    Ok(integrate(z, c, 1, |u| vec![scale * u], "Laplace derivative integral")?.value[0])
}

/// Checks `G(z + 1) = exp(-2 pi i z) G'(z) / (2 pi i)` at each point.
pub fn verify_functional_equation<T: Real>(zs: &[Complex<T>], c: &ContourSpec<T>) -> Result<Vec<FunctionalEqReport<T>>> {
    zs.iter()
        .map(|&z| {
            let lhs = laplace_g(z + T::one(), c)?;
            let rhs = (-two_pi_i::<T>() * z).exp() * laplace_g_prime(z, c)? / two_pi_i::<T>();
            let denom = lhs.norm().max(rhs.norm()).max(crate::scalar::underflow_threshold());
            Ok(FunctionalEqReport { z, lhs, rhs, rel_residual: (lhs - rhs).norm() / denom })
        })
        .collect()
}

/// `|R(z1) - R(z2)|` with `R(z) = G(z) / exp(exp(2 pi i z))`; zero for multiples of the
/// elementary solution `exp(exp(2 pi i z))`.
pub fn nontriviality_check<T: Real>(z1: Complex<T>, z2: Complex<T>, c: &ContourSpec<T>) -> Result<T> {
    let ratio = |z: Complex<T>| -> Result<Complex<T>> { Ok(laplace_g(z, c)? / (two_pi_i::<T>() * z).exp().exp()) };
    Ok((ratio(z1)? - ratio(z2)?).norm())
}

/// Relative gap between `int exp(-2 pi i (u+1) z - 2 pi i u) phi(u+1) du` over the line shifted
/// by `-1` and over the line itself, where `phi(u) = exp(i pi u^2) Gamma(u)`.
pub fn contour_translation_gap<T: Real>(z: Complex<T>, c: &ContourSpec<T>) -> Result<T> {
    let one = Complex::new(T::one(), T::zero());
    let shifted_integrand = |u: Complex<T>| -> Result<Complex<T>> {
        let v = u + T::one();
        let phase = -two_pi_i::<T>() * v * z - two_pi_i::<T>() * u + Complex::new(T::zero(), T::PI()) * v * v;
        Ok(phase.exp() * gamma(v)?)
    };
    let over = |line: &ContourSpec<T>| -> Result<Complex<T>> {
        line.validate()?;
        check_strip(z)?;
        let mut failure = None;
        let quad = trapezoid_doubling(
            |t| {
                let u = line.base + line.direction * t;
                match shifted_integrand(u) {
                    Ok(v) => vec![v * line.direction],
                    Err(e) => {
                        failure.get_or_insert(e);
                        vec![Complex::new(T::zero(), T::zero())]
                    }
                }
            },
            1,
            -line.half_extent,
            line.half_extent,
            line.nodes,
            lit(REFINE_TOL),
            MAX_DOUBLINGS,
            "translated Laplace integral",
        )?;
        match failure {
            Some(e) => Err(e),
            None => Ok(quad.value[0]),
        }
    };
    let on_line = over(c)?;
    let on_shifted = over(&c.translated(-one))?;
    Ok((on_line - on_shifted).norm() / on_line.norm().max(crate::scalar::underflow_threshold()))
}

/// Envelope fit `log|integrand(t)| <= -2 pi t^2 + a |t| + b` on sampled `t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecayFit<T> {
    pub a: T,
    pub b: T,
}

/// Fits the Gaussian envelope of the integrand of `G(z)` at `samples` points of `[-T, T]`.
///
/// `a` is the least-squares slope of `log|integrand| + 2 pi t^2` against `|t|`; `b` is then the
/// smallest intercept making the envelope hold at every sample.
pub fn integrand_decay_fit<T: Real>(z: Complex<T>, c: &ContourSpec<T>, samples: usize) -> Result<DecayFit<T>> {
    c.validate()?;
    check_strip(z)?;
    let two_pi = lit::<T>(2.0) * T::PI();
    let mut xs = Vec::with_capacity(samples);
    let mut ys = Vec::with_capacity(samples);
    for i in 0..samples {
        let t = -c.half_extent + lit::<T>(2.0) * c.half_extent * from_usize::<T>(i) / from_usize::<T>(samples - 1);
        let u = c.base + c.direction * t;
        let value = (kernel(u, z)? * c.direction).norm();
        if value > T::zero() {
            xs.push(t.abs());
            ys.push(value.ln() + two_pi * t * t);
        }
    }
    let (a, _, _) = crate::scalar::linear_fit(&xs, &ys)
        .ok_or_else(|| Error::InvariantViolation("integrand vanished on the contour".into()))?;
    let b = xs.iter().zip(&ys).fold(T::neg_infinity(), |m, (&x, &y)| m.max(y - a * x));
    Ok(DecayFit { a, b })
}

/// Taylor germ of `G` at `z0`, with coefficients `int (-2 pi i u)^k kernel(u, z0) du / k!`.
pub fn laplace_taylor_germ<T: Real>(z0: Complex<T>, order: usize, c: &ContourSpec<T>) -> Result<Germ<T>> {
    let quad = integrate(
        z0,
        c,
        order + 1,
        |u| {
            let step = -two_pi_i::<T>() * u;
            let mut out = Vec::with_capacity(order + 1);
            let mut term = Complex::new(T::one(), T::zero());
            for k in 0..=order {
                out.push(term);
                term = term * step / from_usize::<T>(k + 1);
            }
            out
        },
        "Laplace Taylor coefficients",
    )?;
    Germ::new(z0, quad.value, None)
}
