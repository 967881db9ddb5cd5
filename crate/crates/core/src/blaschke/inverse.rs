use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{is_finite_complex, lit, Real};
use crate::series::{estimate_radius, ops, Germ};

use super::{blaschke_derivative, ZeroSequence};

const DISTINCT_TOL: f64 = 1e-10;

/// Taylor coefficients of `tau -> B(center + scale * tau)`, computed exactly factor by factor.
pub fn blaschke_taylor<T: Real>(zs: &ZeroSequence<T>, center: Complex<T>, scale: T, len: usize) -> Vec<Complex<T>> {
    let one = Complex::new(T::one(), T::zero());
    let mut product = vec![Complex::new(T::zero(), T::zero()); len];
    if len > 0 {
        product[0] = one;
    }
    for &a in zs.points() {
        // (alpha + s tau) / (beta - gamma s tau)
        let alpha = center - a;
        let beta = one - a.conj() * center;
        let ratio = a.conj() * scale / beta;
        let mut geometric = Vec::with_capacity(len);
        let mut g = one / beta;
        for _ in 0..len {
            geometric.push(g);
            g = g * ratio;
        }
        let numerator = [alpha, Complex::new(scale, T::zero())];
        let factor = ops::mul(&numerator, &geometric, len);
        product = ops::mul(&product, &factor, len);
    }
    product
}

/// Inverts `p(tau) = tau + p_2 tau^2 + ...` by Newton iteration on truncated composition.
fn revert<T: Real>(p: &[Complex<T>], len: usize) -> Result<Vec<Complex<T>>> {
    let zero = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    let dp = ops::derivative(p);
    let mut s = vec![zero; len];
    if len > 1 {
        s[1] = one;
    }
    let mut precision = 2;
    while precision < 2 * len {
        let mut residual = ops::compose(p, &s, len);
        if len > 1 {
            residual[1] = residual[1] - one;
        }
        let slope = ops::compose(&dp, &s, len);
        let delta = ops::div(&residual, &slope, len)?;
        for (x, d) in s.iter_mut().zip(&delta) {
            *x = *x - d;
        }
        if s.iter().any(|c| !is_finite_complex(*c)) {
            return Err(Error::Overflow("reverting a power series"));
        }
        precision *= 2;
    }
    // one more pass to clean up rounding in the highest coefficients
    let mut residual = ops::compose(p, &s, len);
    if len > 1 {
        residual[1] = residual[1] - one;
    }
    let delta = ops::div(&residual, &ops::compose(&dp, &s, len), len)?;
    for (x, d) in s.iter_mut().zip(&delta) {
        *x = *x - d;
    }
    Ok(s)
}

fn check_distinct<T: Real>(zs: &ZeroSequence<T>) -> Result<()> {
    let pts = zs.points();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if (pts[i] - pts[j]).norm() <= lit(DISTINCT_TOL) {
                return Err(Error::MultipleZero(i, j));
            }
        }
    }
    Ok(())
}

/// Local scale used for the Taylor expansion at zero `a`.
fn expansion_scale<T: Real>(a: Complex<T>) -> T {
    (T::one() - a.norm()).max(lit(1e-12))
}

/// Branch of `B^{-1}` near 0 taking 0 to a zero of `B`, stored in normalized variables.
///
/// With `s = 1 - |a|` and `lead = B'(a) s`, the inverse is `f(w) = a + s tau(w / lead)` where
/// `tau(v) = v + ...` inverts `p(t) = B(a + s t) / lead`. The normalized coefficients stay
/// representable even when the radius of `f` is far below the unit scale.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalInverse<T: Real> {
    pub center: Complex<T>,
    pub scale: T,
    pub lead: Complex<T>,
    /// `p(t)`, the normalized Taylor series of `B` at the center.
    pub forward: Vec<Complex<T>>,
    /// `tau(v)`, its compositional inverse.
    pub tau: Vec<Complex<T>>,
}

impl<T: Real> LocalInverse<T> {
    pub fn new(zs: &ZeroSequence<T>, n: usize, order: usize) -> Result<Self> {
        check_distinct(zs)?;
        let center = *zs
            .points()
            .get(n)
            .ok_or_else(|| Error::InvalidInput(format!("zero index {n} out of range")))?;
        let scale = expansion_scale(center);
        let len = order + 1;
        let lead = blaschke_derivative(zs, center)? * scale;
        if lead.norm() == T::zero() {
            return Err(Error::MultipleZero(n, n));
        }
        let mut forward: Vec<Complex<T>> =
            blaschke_taylor(zs, center, scale, len).iter().map(|b| b / lead).collect();
        forward[0] = Complex::new(T::zero(), T::zero());
        if len > 1 {
            forward[1] = Complex::new(T::one(), T::zero());
        }
        let tau = revert(&forward, len)?;
        Ok(Self { center, scale, lead, forward, tau })
    }

    pub fn order(&self) -> usize {
        self.tau.len() - 1
    }

    /// Germ of `v -> f(sigma v)`; `sigma = 1` gives the inverse germ itself.
    pub fn germ_scaled(&self, sigma: T) -> Result<Germ<T>> {
        let step = Complex::new(sigma, T::zero()) / self.lead;
        let mut coeffs = Vec::with_capacity(self.tau.len());
        coeffs.push(self.center);
        let mut power = Complex::new(T::one(), T::zero());
        for t in self.tau.iter().skip(1) {
            power = power * step;
            coeffs.push(*t * power * self.scale);
        }
        if coeffs.iter().any(|c| !is_finite_complex(*c)) {
            return Err(Error::Overflow("building the inverse germ"));
        }
        Germ::new(Complex::new(T::zero(), T::zero()), coeffs, None)
    }

    /// Estimated convergence radius of `f`, computed from the normalized series.
    pub fn radius(&self) -> Result<T> {
        let normalized = Germ::new(Complex::new(T::zero(), T::zero()), self.tau.clone(), None)?;
        Ok(estimate_radius(&normalized)?.value * self.lead.norm())
    }

    /// Largest coefficient of `p(tau(v)) - v`, coefficient `k` weighted by `rho^k` with `rho` the
    /// estimated radius of `tau` capped at 1.
    pub fn composition_residual(&self) -> Result<T> {
        let len = self.tau.len();
        let mut residual = ops::compose(&self.forward, &self.tau, len);
        if len > 1 {
            residual[1] = residual[1] - T::one();
        }
        let rho = (self.radius()? / self.lead.norm()).min(T::one());
        Ok(weighted_max(&residual, rho))
    }
}

fn weighted_max<T: Real>(residual: &[Complex<T>], rho: T) -> T {
    residual
        .iter()
        .enumerate()
        .map(|(k, r)| r.norm() * rho.powi(k as i32))
        .fold(T::zero(), T::max)
}

/// Germ at 0 of the branch of `B^{-1}` taking 0 to `a_n`.
///
/// Fails with `Overflow` when the coefficients are not representable; [`LocalInverse`] keeps
/// them in normalized form.
pub fn inverse_germ<T: Real>(zs: &ZeroSequence<T>, n: usize, order: usize) -> Result<Germ<T>> {
    LocalInverse::new(zs, n, order)?.germ_scaled(T::one())
}

/// Largest coefficient of `B(f(w)) - w`, coefficient `k` weighted by `rho^k` where `rho` is the
/// smaller of 1 and the estimated radius of `f`.
pub fn composition_residual<T: Real>(zs: &ZeroSequence<T>, f: &Germ<T>) -> Result<T> {
    let center = f.coeffs()[0];
    let scale = expansion_scale(center);
    let len = f.order() + 1;
    let beta = blaschke_taylor(zs, center, scale, len);
    let mut tau: Vec<Complex<T>> = f.coeffs().iter().map(|c| c / scale).collect();
    tau[0] = Complex::new(T::zero(), T::zero());
    let mut residual = ops::compose(&beta, &tau, len);
    if len > 1 {
        residual[1] = residual[1] - T::one();
    }
    let rho = if f.order() >= crate::series::MIN_RADIUS_ORDER {
        estimate_radius(f)?.value.min(T::one())
    } else {
        T::one()
    };
    Ok(weighted_max(&residual, rho))
}
