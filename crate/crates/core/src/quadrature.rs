//! Quadrature rules shared by the integral verifiers.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{from_usize, is_finite_complex, lit, to_f64, CompensatedSum, Real};

/// Result of an adaptive trapezoid integration.
#[derive(Clone, Debug, PartialEq)]
pub struct Quadrature<T: Real, V> {
    pub value: V,
    /// Change produced by the last node doubling.
    pub est_error: T,
    /// Number of sample points in the final rule.
    pub nodes: usize,
}

/// Trapezoid rule on `[a, b]` with `nodes` equispaced points.
pub fn trapezoid_fixed<T: Real, F>(mut f: F, a: T, b: T, nodes: usize) -> Complex<T>
where
    F: FnMut(T) -> Complex<T>,
{
    let mut out = trapezoid_sums(|x| vec![f(x)], 1, a, b, nodes);
    let h = (b - a) / from_usize::<T>(nodes.max(2) - 1);
    out.pop().map(|s| s.value() * h).unwrap_or_default()
}

fn trapezoid_sums<T: Real, F>(mut f: F, width: usize, a: T, b: T, nodes: usize) -> Vec<CompensatedSum<T>>
where
    F: FnMut(T) -> Vec<Complex<T>>,
{
    let intervals = nodes.max(2) - 1;
    let h = (b - a) / from_usize::<T>(intervals);
    let half = lit::<T>(0.5);
    let mut sums = vec![CompensatedSum::new(); width];
    for i in 0..=intervals {
        let x = if i == intervals { b } else { a + h * from_usize::<T>(i) };
        let w = if i == 0 || i == intervals { half } else { T::one() };
        for (s, v) in sums.iter_mut().zip(f(x)) {
            s.add(v * w);
        }
    }
    sums
}

/// Trapezoid rule with node doubling on a vector-valued integrand of fixed `width`.
///
/// Doubles until successive values differ by at most `tol * max(1, |value|)` in every component.
#[allow(clippy::too_many_arguments)]
pub fn trapezoid_doubling<T: Real, F>(
    mut f: F,
    width: usize,
    a: T,
    b: T,
    nodes: usize,
    tol: T,
    max_doublings: usize,
    what: &'static str,
) -> Result<Quadrature<T, Vec<Complex<T>>>>
where
    F: FnMut(T) -> Vec<Complex<T>>,
{
    let mut intervals = nodes.max(2) - 1;
    let mut h = (b - a) / from_usize::<T>(intervals);
    let mut sums = trapezoid_sums(&mut f, width, a, b, nodes);
    let mut value: Vec<Complex<T>> = sums.iter().map(|s| s.value() * h).collect();
    check_finite(&value, what)?;
    let mut change = T::infinity();
    for _ in 0..max_doublings {
        h = h / lit(2.0);
        for i in 0..intervals {
            let x = a + h * from_usize::<T>(2 * i + 1);
            for (s, v) in sums.iter_mut().zip(f(x)) {
                s.add(v);
            }
        }
        intervals *= 2;
        let next: Vec<Complex<T>> = sums.iter().map(|s| s.value() * h).collect();
        check_finite(&next, what)?;
        let mut converged = true;
        change = T::zero();
        for (old, new) in value.iter().zip(&next) {
            let delta = (new - old).norm();
            change = change.max(delta);
            if delta > tol * T::one().max(new.norm()) {
                converged = false;
            }
        }
        value = next;
        if converged {
            return Ok(Quadrature { value, est_error: change, nodes: intervals + 1 });
        }
    }
    Err(Error::NoConvergence { what, last_change: to_f64(change) })
}

/// Scalar form of [`trapezoid_doubling`].
pub fn trapezoid_doubling_scalar<T: Real, F>(
    mut f: F,
    a: T,
    b: T,
    nodes: usize,
    tol: T,
    max_doublings: usize,
    what: &'static str,
) -> Result<Quadrature<T, Complex<T>>>
where
    F: FnMut(T) -> Complex<T>,
{
    let q = trapezoid_doubling(|x| vec![f(x)], 1, a, b, nodes, tol, max_doublings, what)?;
    Ok(Quadrature { value: q.value[0], est_error: q.est_error, nodes: q.nodes })
}

fn check_finite<T: Real>(values: &[Complex<T>], what: &'static str) -> Result<()> {
    if values.iter().all(|v| is_finite_complex(*v)) {
        Ok(())
    } else {
        Err(Error::Overflow(what))
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre<T: Real>(n: usize) -> (Vec<T>, Vec<T>) {
    let mut nodes = vec![T::zero(); n];
    let mut weights = vec![T::zero(); n];
    let nf = from_usize::<T>(n);
    for i in 0..n.div_ceil(2) {
        let mut x = (T::PI() * (from_usize::<T>(i) + lit(0.75)) / (nf + lit(0.5))).cos();
        let mut dp = T::one();
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x = x - dx;
            if dx.abs() <= T::epsilon() {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        dp = if d != T::zero() { d } else { dp };
        let w = lit::<T>(2.0) / ((T::one() - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// `P_n(x)` and `P_n'(x)` by the three-term recurrence.
fn legendre<T: Real>(n: usize, x: T) -> (T, T) {
    let (mut p0, mut p1) = (T::one(), x);
    if n == 0 {
        return (T::one(), T::zero());
    }
    for k in 2..=n {
        let kf = from_usize::<T>(k);
        let p2 = ((lit::<T>(2.0) * kf - T::one()) * x * p1 - (kf - T::one()) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = from_usize::<T>(n);
    (p1, nf * (x * p1 - p0) / (x * x - T::one()))
}

/// Composite Gauss-Legendre integral of a real function on `[a, b]`.
pub fn gauss_legendre_composite<T: Real, F>(mut f: F, a: T, b: T, panels: usize, points: usize) -> T
where
    F: FnMut(T) -> T,
{
    let (x, w) = gauss_legendre::<T>(points);
    let width = (b - a) / from_usize::<T>(panels);
    let half = width / lit(2.0);
    let mut total = T::zero();
    for p in 0..panels {
        let mid = a + width * (from_usize::<T>(p) + lit(0.5));
        let panel = x.iter().zip(&w).fold(T::zero(), |acc, (&xi, &wi)| acc + wi * f(mid + half * xi));
        total = total + panel * half;
    }
    total
}
