//! First-order linear differential relations fitted to germ coefficients.
//!
//! A germ `f` that satisfies `q1(t) f'(t) + q0(t) f(t) + r(t) = 0` with polynomial `q1, q0, r`
//! can be regenerated to any order from its value at a new center once the polynomials are
//! shifted there. This keeps coefficient accuracy from decaying along long paths.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{from_usize, is_finite_complex, lit, Real};
use crate::series::{ops, working_radius, Germ};

/// Highest polynomial degree tried during detection.
pub const MAX_DEGREE: usize = 6;
/// Equations beyond the fitted ones that must also be satisfied.
pub const MIN_VALIDATION_EQUATIONS: usize = 12;
/// Relative residual accepted on validation equations.
pub const DETECTION_TOL: f64 = 1e-10;

const PIVOT_TOL: f64 = 1e-11;

#[derive(Clone, Debug, PartialEq)]
pub struct DifferentialApproximant<T: Real> {
    center: Complex<T>,
    q1: Vec<Complex<T>>,
    q0: Vec<Complex<T>>,
    r: Vec<Complex<T>>,
}

impl<T: Real> DifferentialApproximant<T> {
    /// Polynomial degree of the relation.
    pub fn degree(&self) -> usize {
        self.q1.len() - 1
    }

    pub fn center(&self) -> Complex<T> {
        self.center
    }

    /// Searches degrees `0..=MAX_DEGREE` for a relation satisfied by the germ's coefficients.
    pub fn detect(g: &Germ<T>) -> Option<Self> {
        let order = g.order();
        let rho = working_radius(g);
        let rho = if rho.is_finite() && rho > T::zero() { rho } else { T::one() };
        let scaled: Vec<Complex<T>> = g
            .coeffs()
            .iter()
            .scan(T::one(), |p, c| {
                let v = c * *p;
                *p = *p * rho;
                Some(v)
            })
            .collect();
        if scaled.iter().any(|c| !is_finite_complex(*c)) {
            return None;
        }
        for d in 0..=MAX_DEGREE {
            let fitted = 3 * d + 2;
            if fitted + MIN_VALIDATION_EQUATIONS > order {
                break;
            }
            let system: Vec<Vec<Complex<T>>> = (0..fitted).map(|n| equation(&scaled, d, n)).collect();
            let Some(v) = best_null_vector(system, 3 * d + 3) else {
                continue;
            };
            let worst = (fitted..order)
                .map(|n| relative_residual(&equation(&scaled, d, n), &v))
                .fold(T::zero(), T::max);
            if worst <= lit(DETECTION_TOL) {
                if let Some(model) = Self::unscale(g.center(), &v, d, rho) {
                    return Some(model);
                }
            }
        }
        None
    }

    fn unscale(center: Complex<T>, v: &[Complex<T>], d: usize, rho: T) -> Option<Self> {
        let mut q1 = Vec::with_capacity(d + 1);
        let mut q0 = Vec::with_capacity(d + 1);
        let mut r = Vec::with_capacity(d + 1);
        let mut inv = T::one();
        for i in 0..=d {
            q1.push(v[i] * rho * inv);
            q0.push(v[d + 1 + i] * inv);
            r.push(v[2 * d + 2 + i] * inv);
            inv = inv / rho;
        }
        Self { center, q1, q0, r }.normalized()
    }

    /// Scales the relation so that `q1(0) = 1`; `None` if the center is a singular point.
    fn normalized(mut self) -> Option<Self> {
        let lead = self.q1[0];
        let size = self.q1.iter().fold(T::zero(), |m, c| m.max(c.norm()));
        if !(lead.norm() > lit::<T>(1e-12) * size) {
            return None;
        }
        for c in self.q1.iter_mut().chain(self.q0.iter_mut()).chain(self.r.iter_mut()) {
            *c = *c / lead;
        }
        Some(self)
    }

    /// The same relation expressed about `q`.
    pub fn recentered(&self, q: Complex<T>) -> Result<Self> {
        let d = q - self.center;
        let shift = |p: &[Complex<T>]| ops::taylor_shift(p, d, p.len()).map(|(c, _)| c);
        Self { center: q, q1: shift(&self.q1)?, q0: shift(&self.q0)?, r: shift(&self.r)? }
            .normalized()
            .ok_or_else(|| Error::DomainViolation("singular point of the fitted relation".into()))
    }

    /// Power-series solution about the model center with constant term `value`.
    pub fn generate(&self, value: Complex<T>, order: usize) -> Result<Vec<Complex<T>>> {
        let d = self.degree();
        let mut f = Vec::with_capacity(order + 1);
        f.push(value);
        for n in 0..order {
            let mut s = self.r.get(n).copied().unwrap_or_else(|| Complex::new(T::zero(), T::zero()));
            for i in 1..=d.min(n) {
                s = s + self.q1[i] * f[n - i + 1] * from_usize::<T>(n - i + 1);
            }
            for i in 0..=d.min(n) {
                s = s + self.q0[i] * f[n - i];
            }
            let next = -s / from_usize::<T>(n + 1);
            if !is_finite_complex(next) {
                return Err(Error::Overflow("generating coefficients from a fitted relation"));
            }
            f.push(next);
        }
        Ok(f)
    }
}

/// Coefficient of `t^n` in `A(t) F'(t) + B(t) F(t) + C(t)` as a row over `(A, B, C)`.
fn equation<T: Real>(c: &[Complex<T>], d: usize, n: usize) -> Vec<Complex<T>> {
    let zero = Complex::new(T::zero(), T::zero());
    let mut row = vec![zero; 3 * d + 3];
    for i in 0..=d.min(n + 1) {
        let k = n + 1 - i;
        if k < c.len() {
            row[i] = c[k] * from_usize::<T>(k);
        }
    }
    for i in 0..=d.min(n) {
        row[d + 1 + i] = c[n - i];
    }
    if n <= d {
        row[2 * d + 2 + n] = Complex::new(T::one(), T::zero());
    }
    row
}

fn relative_residual<T: Real>(row: &[Complex<T>], v: &[Complex<T>]) -> T {
    let mut value = Complex::new(T::zero(), T::zero());
    let mut scale = T::zero();
    for (a, x) in row.iter().zip(v) {
        value = value + a * x;
        scale = scale + a.norm() * x.norm();
    }
    if scale > T::zero() {
        value.norm() / scale
    } else {
        T::zero()
    }
}

/// Null vector of an underdetermined system via Gaussian elimination with complete pivoting.
///
/// When the null space has several dimensions, the basis vector with the largest relative
/// weight on the leading `f'` coefficient is returned.
fn best_null_vector<T: Real>(mut a: Vec<Vec<Complex<T>>>, cols: usize) -> Option<Vec<Complex<T>>> {
    let rows = a.len();
    let mut perm: Vec<usize> = (0..cols).collect();
    let max_entry = a.iter().flatten().fold(T::zero(), |m, c| m.max(c.norm()));
    if max_entry == T::zero() {
        return None;
    }
    let tol = lit::<T>(PIVOT_TOL) * max_entry;
    let mut rank = 0;
    for k in 0..rows.min(cols) {
        let (mut pi, mut pj, mut best) = (k, k, T::zero());
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, c) in row.iter().enumerate().skip(k) {
                if c.norm() > best {
                    best = c.norm();
                    pi = i;
                    pj = j;
                }
            }
        }
        if best <= tol {
            break;
        }
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        perm.swap(k, pj);
        for i in k + 1..rows {
            let factor = a[i][k] / a[k][k];
            if factor.norm() == T::zero() {
                continue;
            }
            for j in k..cols {
                let delta = factor * a[k][j];
                a[i][j] = a[i][j] - delta;
            }
        }
        rank = k + 1;
    }
    let mut best_vec: Option<(T, Vec<Complex<T>>)> = None;
    for free in rank..cols {
        let mut x = vec![Complex::new(T::zero(), T::zero()); cols];
        x[free] = Complex::new(T::one(), T::zero());
        for i in (0..rank).rev() {
            let s = (i + 1..cols).fold(Complex::new(T::zero(), T::zero()), |s, j| s + a[i][j] * x[j]);
            x[i] = -s / a[i][i];
        }
        let mut v = vec![Complex::new(T::zero(), T::zero()); cols];
        for (j, &p) in perm.iter().enumerate() {
            v[p] = x[j];
        }
        let norm = v.iter().fold(T::zero(), |m, c| m.max(c.norm()));
        if !(norm > T::zero()) || !norm.is_finite() {
            continue;
        }
        for c in v.iter_mut() {
            *c = *c / norm;
        }
        let lead = v[0].norm();
        if best_vec.as_ref().is_none_or(|(w, _)| lead > *w) {
            best_vec = Some((lead, v));
        }
    }
    best_vec.map(|(_, v)| v)
}
