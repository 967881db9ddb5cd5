//! Finite Blaschke products with engineered pairs of close zeros.

mod inverse;
mod koebe;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Real};

pub use inverse::{blaschke_taylor, composition_residual, inverse_germ, LocalInverse};
pub use koebe::{covering_failure_demo, koebe_bounds_report, KoebeReport, KOEBE_SAMPLES};

const DISK_TOL: f64 = 1e-12;

/// Zeros `a_n` in the open unit disk; indices `(2n, 2n + 1)` form pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroSequence<T: Real> {
    points: Vec<Complex<T>>,
}

impl<T: Real> ZeroSequence<T> {
    pub fn new(points: Vec<Complex<T>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidInput("a zero sequence needs at least one point".into()));
        }
        if let Some(i) = points.iter().position(|a| !(a.norm() < T::one())) {
            return Err(Error::InvariantViolation(format!("zero {i} is not inside the unit disk")));
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[Complex<T>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Index of the other member of the pair containing `n`, if present.
    pub fn partner(&self, n: usize) -> Option<usize> {
        let other = n ^ 1;
        (other < self.points.len()).then_some(other)
    }
}

/// Pairs `a_{2n} = (1 - 2^-(n+2)) e^{i n step}` and `a_{2n+1} = a_{2n} + (1 - |a_{2n}|)^2 e^{i n step}`.
pub fn make_pair_sequence<T: Real>(n_pairs: usize, angle_step: T) -> Result<ZeroSequence<T>> {
    if n_pairs == 0 {
        return Err(Error::InvalidInput("at least one pair is required".into()));
    }
    let mut points = Vec::with_capacity(2 * n_pairs);
    for n in 0..n_pairs {
        let direction = Complex::from_polar(T::one(), angle_step * lit::<T>(n as f64));
        let leader = direction * (T::one() - lit::<T>(2f64.powi(-(n as i32 + 2))));
        let gap = T::one() - leader.norm();
        let follower = leader + direction * (gap * gap);
        if !(follower.norm() < T::one()) {
            return Err(Error::InvariantViolation(format!("zero {} escapes the unit disk", 2 * n + 1)));
        }
        points.push(leader);
        points.push(follower);
    }
    ZeroSequence::new(points)
}

fn check_closed_disk<T: Real>(z: Complex<T>) -> Result<()> {
    if z.norm() <= T::one() + lit(DISK_TOL) {
        Ok(())
    } else {
        Err(Error::OutOfDisk { distance: to_f64(z.norm()), limit: 1.0 })
    }
}

fn factor<T: Real>(a: Complex<T>, z: Complex<T>) -> Complex<T> {
    (z - a) / (Complex::new(T::one(), T::zero()) - a.conj() * z)
}

fn factor_derivative<T: Real>(a: Complex<T>, z: Complex<T>) -> Complex<T> {
    let d = Complex::new(T::one(), T::zero()) - a.conj() * z;
    Complex::new(T::one() - a.norm_sqr(), T::zero()) / (d * d)
}

/// `B(z) = prod (z - a_n) / (1 - conj(a_n) z)` for `|z| <= 1`.
pub fn blaschke_eval<T: Real>(zs: &ZeroSequence<T>, z: Complex<T>) -> Result<Complex<T>> {
    check_closed_disk(z)?;
    Ok(zs.points.iter().fold(Complex::new(T::one(), T::zero()), |acc, &a| acc * factor(a, z)))
}

/// `B'(z)` by the product rule with prefix and suffix products, so vanishing factors need no
/// special handling.
pub fn blaschke_derivative<T: Real>(zs: &ZeroSequence<T>, z: Complex<T>) -> Result<Complex<T>> {
    check_closed_disk(z)?;
    let factors: Vec<Complex<T>> = zs.points.iter().map(|&a| factor(a, z)).collect();
    let one = Complex::new(T::one(), T::zero());
    let mut suffix = vec![one; factors.len() + 1];
    for i in (0..factors.len()).rev() {
        suffix[i] = suffix[i + 1] * factors[i];
    }
    let mut prefix = one;
    let mut total = Complex::new(T::zero(), T::zero());
    for (i, &a) in zs.points.iter().enumerate() {
        total = total + prefix * factor_derivative(a, z) * suffix[i + 1];
        prefix = prefix * factors[i];
    }
    Ok(total)
}
