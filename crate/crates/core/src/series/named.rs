use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{from_usize, lit, Real};

use super::Germ;

/// Reference germs with known closed forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedGerm {
    /// `1/(2-z)` at 0.
    RecipTwoMinusZ,
    /// `1/(2-z)` at `i`.
    RecipTwoMinusZAtI,
    /// Principal `sqrt(z)` at 1.
    SqrtAtOne,
    /// `1 + z^2 + z^4 + z^8 + ...` at 0.
    Lacunary,
    /// Principal `log(z)` at 1.
    LogAtOne,
}

impl NamedGerm {
    pub const ALL: [NamedGerm; 5] = [
        NamedGerm::RecipTwoMinusZ,
        NamedGerm::RecipTwoMinusZAtI,
        NamedGerm::SqrtAtOne,
        NamedGerm::Lacunary,
        NamedGerm::LogAtOne,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedGerm::RecipTwoMinusZ => "recip_two_minus_z",
            NamedGerm::RecipTwoMinusZAtI => "recip_two_minus_z_at_i",
            NamedGerm::SqrtAtOne => "sqrt_at_one",
            NamedGerm::Lacunary => "lacunary",
            NamedGerm::LogAtOne => "log_at_one",
        }
    }
}

impl fmt::Display for NamedGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedGerm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NamedGerm::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown germ name `{s}`")))
    }
}

/// Exact Taylor germ of a named function truncated at `order`.
pub fn make_named_germ<T: Real>(name: NamedGerm, order: usize) -> Result<Germ<T>> {
    if order < 8 {
        return Err(Error::InvalidInput(format!("named germs need order >= 8, got {order}")));
    }
    let zero = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    let two = lit::<T>(2.0);
    let (center, coeffs, hint) = match name {
        NamedGerm::RecipTwoMinusZ => {
            let ratio = Complex::new(T::one() / two, T::zero());
            (zero, geometric(ratio, ratio, order), Some(two))
        }
        NamedGerm::RecipTwoMinusZAtI => {
            let ratio = one / Complex::new(two, -T::one());
            (Complex::i(), geometric(ratio, ratio, order), Some(lit::<T>(5.0).sqrt()))
        }
        NamedGerm::SqrtAtOne => {
            // binomial series of (1 + t)^{1/2}
            let half = lit::<T>(0.5);
            let mut coeffs = Vec::with_capacity(order + 1);
            let mut c = T::one();
            for k in 0..=order {
                coeffs.push(Complex::new(c, T::zero()));
                let kf = from_usize::<T>(k);
                c = c * (half - kf) / (kf + T::one());
            }
            (one, coeffs, Some(T::one()))
        }
        NamedGerm::Lacunary => {
            let mut coeffs = vec![zero; order + 1];
            coeffs[0] = one;
            let mut e = 2usize;
            while e <= order {
                coeffs[e] = one;
                e *= 2;
            }
            (zero, coeffs, Some(T::one()))
        }
        NamedGerm::LogAtOne => {
            let coeffs = (0..=order)
                .map(|k| {
                    if k == 0 {
                        zero
                    } else {
                        let sign = if k % 2 == 1 { T::one() } else { -T::one() };
                        Complex::new(sign / from_usize::<T>(k), T::zero())
                    }
                })
                .collect();
            (one, coeffs, Some(T::one()))
        }
    };
    Germ::new(center, coeffs, hint)
}

fn geometric<T: Real>(first: Complex<T>, ratio: Complex<T>, order: usize) -> Vec<Complex<T>> {
    std::iter::successors(Some(first), |c| Some(c * ratio)).take(order + 1).collect()
}
