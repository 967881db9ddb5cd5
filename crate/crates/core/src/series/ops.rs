//! Arithmetic on truncated coefficient vectors.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{from_usize, is_finite_complex, CompensatedSum, Real};

fn zero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

/// Cauchy product truncated to `len` coefficients.
pub fn mul<T: Real>(a: &[Complex<T>], b: &[Complex<T>], len: usize) -> Vec<Complex<T>> {
    (0..len)
        .map(|k| {
            (0..=k)
                .filter(|&i| i < a.len() && k - i < b.len())
                .fold(zero(), |acc, i| acc + a[i] * b[k - i])
        })
        .collect()
}

/// Quotient `a / b` truncated to `len` coefficients; needs `b[0] != 0`.
pub fn div<T: Real>(a: &[Complex<T>], b: &[Complex<T>], len: usize) -> Result<Vec<Complex<T>>> {
    let b0 = *b.first().ok_or_else(|| Error::InvalidInput("empty divisor series".into()))?;
    if b0.norm() == T::zero() {
        return Err(Error::InvalidInput("divisor series has zero constant term".into()));
    }
    let mut q: Vec<Complex<T>> = Vec::with_capacity(len);
    for k in 0..len {
        let mut acc = a.get(k).copied().unwrap_or_else(zero);
        for i in 1..=k.min(b.len() - 1) {
            acc = acc - b[i] * q[k - i];
        }
        q.push(acc / b0);
    }
    Ok(q)
}

/// Composition `p(s(w))` truncated to `len` coefficients; needs `s[0] == 0`.
pub fn compose<T: Real>(p: &[Complex<T>], s: &[Complex<T>], len: usize) -> Vec<Complex<T>> {
    let mut acc = vec![zero(); len];
    for c in p.iter().rev() {
        acc = mul(&acc, s, len);
        if let Some(a0) = acc.first_mut() {
            *a0 = *a0 + c;
        }
    }
    acc
}

/// Term-wise derivative.
pub fn derivative<T: Real>(a: &[Complex<T>]) -> Vec<Complex<T>> {
    a.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * from_usize::<T>(k))
        .collect()
}

/// Taylor shift: coefficients of `sum a_n (d + t)^n` in powers of `t`, truncated to `len`.
///
/// Also returns, per output coefficient, the sum of magnitudes of its terms, which bounds the
/// rounding error of the shifted coefficient.
pub fn taylor_shift<T: Real>(
    a: &[Complex<T>],
    d: Complex<T>,
    len: usize,
) -> Result<(Vec<Complex<T>>, Vec<T>)> {
    let mut out = Vec::with_capacity(len);
    let mut scale = Vec::with_capacity(len);
    for k in 0..len {
        let mut sum = CompensatedSum::new();
        let mut magnitude = T::zero();
        // weight = C(n, k) d^(n-k), advanced incrementally in n
        let mut weight = Complex::new(T::one(), T::zero());
        for n in k..a.len() {
            if n > k {
                let nf = from_usize::<T>(n);
                weight = weight * d * (nf / from_usize::<T>(n - k));
            }
            let term = weight * a[n];
            magnitude = magnitude + term.norm();
            sum.add(term);
        }
        let value = sum.value();
        if !is_finite_complex(value) || !magnitude.is_finite() {
            return Err(Error::Overflow("shifting a power series"));
        }
        out.push(value);
        scale.push(magnitude);
    }
    Ok((out, scale))
}
