use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{from_usize, lit, Real};
use crate::series::{eval_germ, Germ};

use super::{blaschke_derivative, make_pair_sequence, LocalInverse, ZeroSequence};

/// Boundary samples used for the sampled Koebe and exclusion checks.
pub const KOEBE_SAMPLES: usize = 32;
/// Fraction of `r_n` at which the inverse germ is sampled.
pub const SAMPLE_RADIUS_FRACTION: f64 = 0.9;

const BOUND_TOL: f64 = 1e-6;

/// Bound checks for the inverse germ at a zero of `B`.
#[derive(Clone, Debug, PartialEq)]
pub struct KoebeReport<T: Real> {
    pub n: usize,
    pub a_n: Complex<T>,
    /// `B'(a_n)`.
    pub deriv_b: Complex<T>,
    /// `f_n'(0)`.
    pub deriv_f: Complex<T>,
    /// Estimated convergence radius of the inverse germ.
    pub r_n: T,
    /// `4 |a_n - a_partner|`, absent without a partner.
    pub bound_4_gap: Option<T>,
    /// `4 (1 - |a_n|)`.
    pub bound_shrink: T,
    /// `bound_4_gap >= r_n |f_n'(0)|`, absent without a partner.
    pub passes_gap_bound: Option<bool>,
    /// `r_n <= bound_shrink`.
    pub passes_shrink_bound: bool,
    /// `|f_n'(0) B'(a_n) - 1|`.
    pub chain_rule_defect: T,
    /// `|B'(a_n)| (1 - |a_n|^2)`, at most 1 by Schwarz-Pick.
    pub schwarz_pick: T,
    /// `min |f_n(w) - a_n| / (0.25 * 0.9 r_n |f_n'(0)|)` over samples `|w| = 0.9 r_n`.
    pub koebe_ratio: T,
    /// `min |f_n(w) - a_partner|` over the same samples.
    pub partner_clearance: Option<T>,
}

fn sample_circle<T: Real>(f: &Germ<T>, radius: T) -> Result<Vec<Complex<T>>> {
    (0..KOEBE_SAMPLES)
        .map(|j| {
            let angle = lit::<T>(2.0) * T::PI() * from_usize::<T>(j) / from_usize::<T>(KOEBE_SAMPLES);
            eval_germ(f, Complex::from_polar(radius, angle))
        })
        .collect()
}

/// Builds the inverse germ at zero `n` and evaluates the bound checks.
pub fn koebe_bounds_report<T: Real>(zs: &ZeroSequence<T>, n: usize, order: usize) -> Result<KoebeReport<T>> {
    if !n.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!("reports are built for pair leaders, got odd index {n}")));
    }
    let inverse = LocalInverse::new(zs, n, order)?;
    let a_n = zs.points()[n];
    let deriv_b = blaschke_derivative(zs, a_n)?;
    let deriv_f = Complex::new(inverse.scale, T::zero()) / inverse.lead;
    let r_n = inverse.radius()?;
    // sample the germ in units of r_n so its coefficients stay representable
    let unit = inverse.germ_scaled(r_n)?;
    let bound_shrink = lit::<T>(4.0) * (T::one() - a_n.norm());
    let partner = zs.partner(n).map(|p| zs.points()[p]);
    let bound_4_gap = partner.map(|p| lit::<T>(4.0) * (a_n - p).norm());
    let slope = r_n * deriv_f.norm();
    let tol = |scale: T| lit::<T>(BOUND_TOL) * scale;
    let passes_gap_bound = bound_4_gap.map(|b| b >= slope - tol(b.max(slope)));
    let passes_shrink_bound = r_n <= bound_shrink + tol(bound_shrink);
    let sample_radius = lit::<T>(SAMPLE_RADIUS_FRACTION) * r_n;
    let images = sample_circle(&unit, lit(SAMPLE_RADIUS_FRACTION))?;
    let koebe_scale = lit::<T>(0.25) * sample_radius * deriv_f.norm();
    let koebe_ratio = images
        .iter()
        .map(|w| (w - a_n).norm() / koebe_scale)
        .fold(T::infinity(), T::min);
    let partner_clearance = partner.map(|p| images.iter().map(|w| (w - p).norm()).fold(T::infinity(), T::min));
    Ok(KoebeReport {
        n,
        a_n,
        deriv_b,
        deriv_f,
        r_n,
        bound_4_gap,
        bound_shrink,
        passes_gap_bound,
        passes_shrink_bound,
        chain_rule_defect: (deriv_f * deriv_b - T::one()).norm(),
        schwarz_pick: deriv_b.norm() * (T::one() - a_n.norm_sqr()),
        koebe_ratio,
        partner_clearance,
    })
}

/// Reports for every pair leader of `make_pair_sequence(n_pairs, angle_step)`.
pub fn covering_failure_demo<T: Real>(n_pairs: usize, angle_step: T, order: usize) -> Result<Vec<KoebeReport<T>>> {
    if n_pairs > 12 {
        return Err(Error::InvalidInput(format!("at most 12 pairs are supported, got {n_pairs}")));
    }
    let zs = make_pair_sequence(n_pairs, angle_step)?;
    (0..n_pairs).map(|i| koebe_bounds_report(&zs, 2 * i, order)).collect()
}
