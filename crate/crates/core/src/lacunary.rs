//! The lacunary series `h(z) = 1 + z^2 + z^4 + z^8 + ...` and its behavior near the unit circle.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{from_usize, lit, linear_fit, to_f64, CompensatedSum, Real};

/// Term cutoff used by the radial probes.
pub const PROBE_TOL: f64 = 1e-16;
/// Minimum growth slope of `|h(1 - 2^-j)|` per unit `j` that counts as blow-up.
pub const BLOW_UP_SLOPE: f64 = 0.3;
/// First dyadic radius index used by [`radial_probe`].
pub const FIRST_RADIUS_INDEX: u32 = 4;
/// Largest radius index for which `1 - 2^-j` is still distinct from 1 in double precision.
pub const MAX_RADIUS_INDEX: u32 = 52;

const MAX_SQUARINGS: usize = 4096;

fn check_disk<T: Real>(z: Complex<T>) -> Result<()> {
    let r = z.norm();
    if r < T::one() {
        Ok(())
    } else {
        Err(Error::OutOfDisk { distance: to_f64(r), limit: 1.0 })
    }
}

/// Partial sum `1 + sum_{n>=1} z^(2^n)`, stopping at the first term of magnitude below `tol`.
pub fn lacunary_eval<T: Real>(z: Complex<T>, tol: T) -> Result<Complex<T>> {
    check_disk(z)?;
    let mut sum = CompensatedSum::new();
    sum.add(Complex::new(T::one(), T::zero()));
    let mut term = z;
    for _ in 0..MAX_SQUARINGS {
        term = term * term;
        if term.norm() < tol {
            break;
        }
        sum.add(term);
    }
    Ok(sum.value())
}

/// `z^(2^m)` by `m` squarings.
pub fn dyadic_power<T: Real>(z: Complex<T>, m: u32) -> Complex<T> {
    (0..m).fold(z, |w, _| w * w)
}

/// `z^2 + z^4 + ... + z^(2^m) + h(z^(2^m))`.
pub fn telescoped_eval<T: Real>(z: Complex<T>, m: u32, tol: T) -> Result<Complex<T>> {
    check_disk(z)?;
    if m == 0 {
        return Err(Error::InvalidInput("telescoping depth must be at least 1".into()));
    }
    let mut sum = CompensatedSum::new();
    let mut term = z;
    for _ in 0..m {
        term = term * term;
        sum.add(term);
    }
    sum.add(lacunary_eval(term, tol)?);
    Ok(sum.value())
}

/// `|h(z) - z^2 - h(z^2)|`.
pub fn functional_equation_residual<T: Real>(z: Complex<T>, tol: T) -> Result<T> {
    let z2 = z * z;
    Ok((lacunary_eval(z, tol)? - z2 - lacunary_eval(z2, tol)?).norm())
}

/// Values of `h` along the radius towards `exp(2 pi i k / 2^m)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialProbeReport<T: Real> {
    pub k: u64,
    pub m: u32,
    pub direction: Complex<T>,
    /// Radius indices `j`, with radius `1 - 2^-j`.
    pub indices: Vec<u32>,
    pub radii: Vec<T>,
    pub values: Vec<Complex<T>>,
    /// Fitted slope of `|h|` against `j`.
    pub growth_slope: T,
    pub blow_up_detected: bool,
    /// Every sampled value is nonzero.
    pub zero_free: bool,
}

/// Evaluates `h` at `(1 - 2^-j) exp(2 pi i k / 2^m)` for `j = 4..=m_max` and fits the growth.
///
/// For `m >= 1` the evaluation telescopes to depth `m`, which maps the point onto the positive
/// real axis before the tail is summed.
pub fn radial_probe<T: Real>(k: u64, m: u32, m_max: u32) -> Result<RadialProbeReport<T>> {
    if m > 62 || k >= 1u64 << m {
        return Err(Error::InvalidInput(format!("direction index k={k} out of range for m={m}")));
    }
    if !(8..=MAX_RADIUS_INDEX).contains(&m_max) {
        return Err(Error::InvalidInput(format!("m_max must lie in 8..={MAX_RADIUS_INDEX}, got {m_max}")));
    }
    let angle = lit::<T>(2.0) * T::PI() * T::from_u64(k).unwrap_or_else(T::zero) / lit::<T>(2f64.powi(m as i32));
    let direction = Complex::from_polar(T::one(), angle);
    let tol = lit::<T>(PROBE_TOL);
    let indices: Vec<u32> = (FIRST_RADIUS_INDEX..=m_max).collect();
    let mut radii = Vec::with_capacity(indices.len());
    let mut values = Vec::with_capacity(indices.len());
    for &j in &indices {
        let r = T::one() - lit::<T>(2f64.powi(-(j as i32)));
        let z = direction * r;
        let value = if m == 0 { lacunary_eval(z, tol)? } else { telescoped_eval(z, m, tol)? };
        radii.push(r);
        values.push(value);
    }
    let xs: Vec<T> = indices.iter().map(|&j| from_usize::<T>(j as usize)).collect();
    let ys: Vec<T> = values.iter().map(|v| v.norm()).collect();
    let growth_slope = linear_fit(&xs, &ys).map(|(s, _, _)| s).unwrap_or_else(T::zero);
    Ok(RadialProbeReport {
        k,
        m,
        direction,
        indices,
        radii,
        zero_free: values.iter().all(|v| v.norm() > T::zero()),
        values,
        growth_slope,
        blow_up_detected: growth_slope >= lit(BLOW_UP_SLOPE),
    })
}

/// Radial probes towards every `2^m`-th root of unity.
pub fn boundary_scan<T: Real>(m: u32, m_max: u32) -> Result<Vec<RadialProbeReport<T>>> {
    if m > 8 {
        return Err(Error::InvalidInput(format!("boundary scans support m <= 8, got {m}")));
    }
    (0..1u64 << m).map(|k| radial_probe(k, m, m_max)).collect()
}
