//! Complex gamma function and the leading Stirling term.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Real};

/// Lanczos parameter `g = 607/128` with 15 coefficients (Godfrey's set).
const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS_COEFFS: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_747,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    0.465_236_289_270_485_8e-4,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_6e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];

const POLE_TOL: f64 = 1e-12;

/// `Gamma(u)` by the Lanczos approximation, with reflection for `Re u < 1/2`.
pub fn gamma<T: Real>(u: Complex<T>) -> Result<Complex<T>> {
    let nearest = u.re.round();
    if nearest <= T::zero() && (u - Complex::new(nearest, T::zero())).norm() <= lit(POLE_TOL) {
        return Err(Error::PoleAtNonpositiveInteger { re: to_f64(u.re), im: to_f64(u.im) });
    }
    Ok(gamma_unchecked(u))
}

fn gamma_unchecked<T: Real>(u: Complex<T>) -> Complex<T> {
    let half = lit::<T>(0.5);
    if u.re < half {
        let pi = Complex::new(T::PI(), T::zero());
        return pi / ((u * T::PI()).sin() * gamma_unchecked(Complex::new(T::one(), T::zero()) - u));
    }
    let z = u - T::one();
    let series = LANCZOS_COEFFS[1..]
        .iter()
        .enumerate()
        .fold(Complex::new(lit::<T>(LANCZOS_COEFFS[0]), T::zero()), |acc, (k, &c)| {
            acc + Complex::new(lit::<T>(c), T::zero()) / (z + lit::<T>((k + 1) as f64))
        });
    let t = z + lit::<T>(LANCZOS_G) + half;
    let sqrt_two_pi = (lit::<T>(2.0) * T::PI()).sqrt();
    ((z + half) * t.ln() - t).exp() * series * sqrt_two_pi
}

/// `exp[(u - 1/2) Log u - u + log(2 pi)/2]`.
pub fn stirling_main<T: Real>(u: Complex<T>) -> Complex<T> {
    let half = lit::<T>(0.5);
    ((u - half) * u.ln() - u + half * (lit::<T>(2.0) * T::PI()).ln()).exp()
}

/// `|Gamma(u) / stirling_main(u) - 1|` for `|u| >= 5` away from the negative axis.
pub fn stirling_check<T: Real>(u: Complex<T>) -> Result<T> {
    if u.norm() < lit(5.0) || u.arg().abs() >= T::PI() - lit(0.1) {
        return Err(Error::DomainViolation(format!(
            "Stirling check needs |u| >= 5 and |arg u| < pi - 0.1, got ({}, {})",
            to_f64(u.re),
            to_f64(u.im)
        )));
    }
    Ok((gamma(u)? / stirling_main(u) - T::one()).norm())
}
