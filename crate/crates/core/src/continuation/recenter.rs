use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Real};
use crate::series::{guard_radius, ops, Germ};

const CENTER_MATCH_TOL: f64 = 1e-10;

/// Re-expands `g` about `q`, refusing points outside the guarded disk of `g`.
pub fn recenter<T: Real>(g: &Germ<T>, q: Complex<T>, order: usize) -> Result<Germ<T>> {
    let distance = (q - g.center()).norm();
    let limit = guard_radius(g);
    if !(distance < limit) && distance > T::zero() {
        return Err(Error::OutOfDisk { distance: to_f64(distance), limit: to_f64(limit) });
    }
    recenter_unguarded(g, q, order)
}

/// Re-expansion without the disk guard; the caller is responsible for admissibility.
pub fn recenter_unguarded<T: Real>(g: &Germ<T>, q: Complex<T>, order: usize) -> Result<Germ<T>> {
    let d = q - g.center();
    if d.norm() == T::zero() {
        return Germ::new(q, g.truncated(order).coeffs().to_vec(), g.radius_hint());
    }
    let (coeffs, _) = ops::taylor_shift(g.coeffs(), d, order + 1)?;
    Germ::new(q, coeffs, None)
}

/// `max_{k <= m} |a_k - b_k| / (1 + |a_k|)` for germs sharing a center.
pub fn germ_distance<T: Real>(g1: &Germ<T>, g2: &Germ<T>, m: usize) -> Result<T> {
    let gap = (g1.center() - g2.center()).norm();
    if gap > lit(CENTER_MATCH_TOL) {
        return Err(Error::CenterMismatch(to_f64(gap)));
    }
    if g1.order() < m || g2.order() < m {
        return Err(Error::InsufficientOrder { needed: m, got: g1.order().min(g2.order()) });
    }
    Ok(g1.coeffs()[..=m]
        .iter()
        .zip(&g2.coeffs()[..=m])
        .map(|(a, b)| (a - b).norm() / (T::one() + a.norm()))
        .fold(T::zero(), T::max))
}
