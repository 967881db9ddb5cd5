use crate::error::{Error, Result};
use crate::scalar::{from_usize, linear_fit, underflow_threshold, Real};

use super::Germ;

pub const MIN_RADIUS_ORDER: usize = 8;

/// Growth exponent of `1/(k!)^g` above which the tail is classified as entire.
const FACTORIAL_DECAY_CUTOFF: f64 = 0.3;

/// Convergence radius estimated from the coefficient tail.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadiusEstimate<T> {
    /// Positive radius, or `+inf` when the tail decays faster than any geometric rate.
    pub value: T,
    /// Number of coefficients entering the fit.
    pub window: usize,
    /// `1 / (1 + rms)` of the log-linear fit residual.
    pub confidence: T,
}

impl<T: Real> RadiusEstimate<T> {
    pub fn is_infinite(&self) -> bool {
        self.value.is_infinite()
    }

    fn entire(window: usize) -> Self {
        Self { value: T::infinity(), window, confidence: T::one() }
    }
}

/// Least-squares fit of `log|a_k|` against `k` over the last `max(8, order/2)` nonzero coefficients.
///
/// Returns the `+inf` sentinel when the upper half of the tail has underflowed, or when the tail
/// decays like a power of `1/k!`.
pub fn estimate_radius<T: Real>(g: &Germ<T>) -> Result<RadiusEstimate<T>> {
    let order = g.order();
    if order < MIN_RADIUS_ORDER {
        return Err(Error::InsufficientOrder { needed: MIN_RADIUS_ORDER, got: order });
    }
    let threshold = underflow_threshold::<T>();
    let nonzero: Vec<(usize, T)> = g
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(k, c)| {
            let m = c.norm();
            (m > threshold).then(|| (k, m.ln()))
        })
        .collect();
    if !nonzero.iter().any(|&(k, _)| 2 * k > order) {
        return Ok(RadiusEstimate::entire(0));
    }
    let window = MIN_RADIUS_ORDER.max(order / 2);
    let tail = &nonzero[nonzero.len().saturating_sub(window)..];
    let xs: Vec<T> = tail.iter().map(|&(k, _)| from_usize(k)).collect();
    let ys: Vec<T> = tail.iter().map(|&(_, y)| y).collect();
    let Some((slope, _, rms)) = linear_fit(&xs, &ys) else {
        return Ok(RadiusEstimate::entire(tail.len()));
    };
    if factorial_decay(tail) > crate::scalar::lit(FACTORIAL_DECAY_CUTOFF) {
        return Ok(RadiusEstimate::entire(tail.len()));
    }
    Ok(RadiusEstimate {
        value: (-slope).exp(),
        window: tail.len(),
        confidence: T::one() / (T::one() + rms),
    })
}

/// Fits `log|a_k| = c + b k - g ln k!` and returns `g`.
fn factorial_decay<T: Real>(tail: &[(usize, T)]) -> T {
    if tail.len() < 6 {
        return T::zero();
    }
    let n = from_usize::<T>(tail.len());
    let rows: Vec<(T, T, T)> = tail
        .iter()
        .map(|&(k, y)| (from_usize::<T>(k), ln_factorial::<T>(k), y))
        .collect();
    let mean = rows.iter().fold((T::zero(), T::zero(), T::zero()), |a, r| {
        (a.0 + r.0, a.1 + r.1, a.2 + r.2)
    });
    let (mk, mf, my) = (mean.0 / n, mean.1 / n, mean.2 / n);
    let (mut skk, mut skf, mut sff, mut sky, mut sfy) =
        (T::zero(), T::zero(), T::zero(), T::zero(), T::zero());
    for &(k, f, y) in &rows {
        let (dk, df, dy) = (k - mk, f - mf, y - my);
        skk = skk + dk * dk;
        skf = skf + dk * df;
        sff = sff + df * df;
        sky = sky + dk * dy;
        sfy = sfy + df * dy;
    }
    let det = skk * sff - skf * skf;
    if !(det > T::epsilon() * skk * sff) {
        return T::zero();
    }
    -(skk * sfy - skf * sky) / det
}

fn ln_factorial<T: Real>(k: usize) -> T {
    (2..=k).fold(T::zero(), |acc, i| acc + from_usize::<T>(i).ln())
}

/// Radius used for stepping and scaling: the estimate when finite, otherwise the root-test
/// bound `|a_k|^{-1/k}` of the last nonzero coefficient, otherwise the radius hint.
pub fn working_radius<T: Real>(g: &Germ<T>) -> T {
    let estimate = if g.order() >= MIN_RADIUS_ORDER {
        estimate_radius(g).map(|e| e.value).unwrap_or(T::infinity())
    } else {
        T::infinity()
    };
    let estimate = match g.radius_hint() {
        Some(h) => h.min(estimate),
        None => estimate,
    };
    if estimate.is_finite() {
        return estimate;
    }
    let threshold = underflow_threshold::<T>();
    g.coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .rev()
        .find(|(_, c)| c.norm() > threshold)
        .map(|(k, c)| c.norm().powf(-T::one() / from_usize::<T>(k)))
        .unwrap_or(T::infinity())
}
