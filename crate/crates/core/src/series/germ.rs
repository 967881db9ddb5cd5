use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{from_usize, is_finite_complex, lit, to_f64, Real};

use super::radius::{estimate_radius, MIN_RADIUS_ORDER};

/// Fraction of the estimated radius inside which guarded evaluation is allowed.
pub const EVAL_GUARD: f64 = 0.95;

/// Truncated Taylor series `sum coeffs[k] (z - center)^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Germ<T: Real> {
    center: Complex<T>,
    coeffs: Vec<Complex<T>>,
    radius_hint: Option<T>,
}

impl<T: Real> Germ<T> {
    pub fn new(center: Complex<T>, coeffs: Vec<Complex<T>>, radius_hint: Option<T>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("a germ needs at least one coefficient".into()));
        }
        if !is_finite_complex(center) {
            return Err(Error::InvalidInput("germ center is not finite".into()));
        }
        if let Some(k) = coeffs.iter().position(|c| !is_finite_complex(*c)) {
            return Err(Error::InvalidInput(format!("coefficient {k} is not finite")));
        }
        if let Some(r) = radius_hint {
            if !(r > T::zero()) {
                return Err(Error::InvalidInput("radius hint must be positive".into()));
            }
        }
        Ok(Self { center, coeffs, radius_hint })
    }

    pub fn center(&self) -> Complex<T> {
        self.center
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn radius_hint(&self) -> Option<T> {
        self.radius_hint
    }

    pub fn with_radius_hint(mut self, hint: Option<T>) -> Result<Self> {
        if let Some(r) = hint {
            if !(r > T::zero()) {
                return Err(Error::InvalidInput("radius hint must be positive".into()));
            }
        }
        self.radius_hint = hint;
        Ok(self)
    }

    /// Coefficient-wise negation.
    pub fn negated(&self) -> Self {
        Self {
            center: self.center,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            radius_hint: self.radius_hint,
        }
    }

    /// Keeps the first `order + 1` coefficients, padding with zeros if needed.
    pub fn truncated(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, Complex::new(T::zero(), T::zero()));
        Self { center: self.center, coeffs, radius_hint: self.radius_hint }
    }
}

/// Radius inside which [`eval_germ`] accepts points.
///
/// Uses the coefficient-based estimate when the order allows it, capped by the radius hint.
pub fn guard_radius<T: Real>(g: &Germ<T>) -> T {
    let estimated = if g.order() >= MIN_RADIUS_ORDER {
        estimate_radius(g).map(|e| e.value).unwrap_or(T::infinity())
    } else {
        T::infinity()
    };
    let radius = match g.radius_hint {
        Some(h) => h.min(estimated),
        None => estimated,
    };
    lit::<T>(EVAL_GUARD) * radius
}

/// Evaluates the germ at `z`, refusing points outside the guarded disk.
pub fn eval_germ<T: Real>(g: &Germ<T>, z: Complex<T>) -> Result<Complex<T>> {
    let distance = (z - g.center).norm();
    let limit = guard_radius(g);
    if !(distance < limit) {
        return Err(Error::OutOfDisk { distance: to_f64(distance), limit: to_f64(limit) });
    }
    eval_germ_unguarded(g, z)
}

/// Horner evaluation without the disk guard.
pub fn eval_germ_unguarded<T: Real>(g: &Germ<T>, z: Complex<T>) -> Result<Complex<T>> {
    let t = z - g.center;
    let mut acc = Complex::new(T::zero(), T::zero());
    for c in g.coeffs.iter().rev() {
        acc = acc * t + c;
    }
    if is_finite_complex(acc) {
        Ok(acc)
    } else {
        Err(Error::Overflow("evaluating a germ"))
    }
}

/// Term-wise derivative; the order drops by one.
pub fn derivative_germ<T: Real>(g: &Germ<T>) -> Result<Germ<T>> {
    if g.order() == 0 {
        return Err(Error::DegenerateOrder(0));
    }
    let coeffs = g.coeffs[1..]
        .iter()
        .enumerate()
        .map(|(k, c)| c * from_usize::<T>(k + 1))
        .collect::<Vec<_>>();
    if coeffs.iter().any(|c| !is_finite_complex(*c)) {
        return Err(Error::Overflow("differentiating a germ"));
    }
    Ok(Germ { center: g.center, coeffs, radius_hint: g.radius_hint })
}
