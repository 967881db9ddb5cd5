//! Re-expansion of germs, continuation along paths and monodromy around loops.
//!
//! Two extrapolation regimes drive the stepper. When the starting germ satisfies a fitted
//! first-order linear differential relation, every new germ is regenerated from that relation
//! at the new center, so coefficient errors do not compound. Otherwise germs are re-expanded
//! directly from an anchor germ and steps are confined to the anchor's guarded disk, which makes
//! the stepper stall in front of obstructions such as a natural boundary.

mod approximant;
mod path;
mod recenter;

use num_complex::Complex;

pub use approximant::DifferentialApproximant;
pub use path::{PathSpec, Segment, ARC_SAMPLE_ANGLE};
pub use recenter::{germ_distance, recenter, recenter_unguarded};

use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Real};
use crate::series::{ops, working_radius, Germ, EVAL_GUARD};
use path::Cursor;

/// Number of leading coefficients compared by [`monodromy_loop`].
pub const MONODROMY_DEPTH: usize = 16;
/// Coefficients cross-checked between the fitted relation and direct re-expansion at each step.
pub const CROSS_CHECK_DEPTH: usize = 8;

/// Minimum truncation order of the germs carried between steps.
pub const WORKING_ORDER: usize = 64;

const MAX_STEPS: usize = 100_000;
const START_TOL: f64 = 1e-12;

/// Controls the continuation stepper.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepPolicy<T> {
    /// Fraction of the current radius estimate covered per step.
    pub step_fraction: T,
    /// Steps shorter than this signal an obstruction.
    pub min_step: T,
    /// Truncation order of produced germs.
    pub order: usize,
    /// Agreement tolerance for overlapping germs and monodromy classification.
    pub overlap_tol: T,
}

impl<T: Real> Default for StepPolicy<T> {
    fn default() -> Self {
        Self { step_fraction: lit(0.4), min_step: lit(1e-6), order: 64, overlap_tol: lit(1e-8) }
    }
}

impl<T: Real> StepPolicy<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.step_fraction > T::zero() && self.step_fraction < T::one()) {
            return Err(Error::InvalidInput("step_fraction must lie in (0, 1)".into()));
        }
        if !(self.min_step > T::zero()) {
            return Err(Error::InvalidInput("min_step must be positive".into()));
        }
        if !(self.overlap_tol > T::zero()) {
            return Err(Error::InvalidInput("overlap_tol must be positive".into()));
        }
        if self.order == 0 {
            return Err(Error::InvalidInput("order must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceStatus {
    Completed,
    Stalled,
}

/// Chain of germs produced along a path.
#[derive(Clone, Debug, PartialEq)]
pub struct ContinuationTrace<T: Real> {
    pub germs: Vec<Germ<T>>,
    pub step_points: Vec<Complex<T>>,
    pub status: TraceStatus,
    pub stall_point: Option<Complex<T>>,
}

impl<T: Real> ContinuationTrace<T> {
    pub fn last(&self) -> &Germ<T> {
        &self.germs[self.germs.len() - 1]
    }
}

enum Regime<T: Real> {
    Relation(DifferentialApproximant<T>),
    Anchored { anchor: Germ<T>, guard: T },
}

impl<T: Real> Regime<T> {
    /// Chooses the regime for `g` and returns the germ carried into the first step.
    fn start(g: &Germ<T>, order: usize) -> (Self, Germ<T>) {
        if let Some(model) = DifferentialApproximant::detect(g) {
            let regenerated = model
                .generate(g.coeffs()[0], order)
                .ok()
                .and_then(|coeffs| Germ::new(g.center(), coeffs, g.radius_hint()).ok());
            if let Some(working) = regenerated {
                return (Regime::Relation(model), working);
            }
        }
        (Self::anchored(g), g.clone())
    }

    fn anchored(g: &Germ<T>) -> Self {
        Regime::Anchored { anchor: g.clone(), guard: lit::<T>(EVAL_GUARD) * working_radius(g) }
    }

    /// Radius of the disk around `current` in which the next germ may be placed.
    fn reach(&self, current: &Germ<T>) -> T {
        match self {
            Regime::Relation(_) => working_radius(current),
            Regime::Anchored { anchor, guard } => {
                (*guard - (current.center() - anchor.center()).norm()).max(T::zero())
            }
        }
    }
}

enum StepFailure {
    /// The step is too long: overflow or a singular point was hit.
    Inadmissible,
    /// The fitted relation disagrees with direct re-expansion.
    Inconsistent,
}

fn attempt<T: Real>(
    regime: &Regime<T>,
    current: &Germ<T>,
    q: Complex<T>,
    order: usize,
    policy: &StepPolicy<T>,
) -> std::result::Result<(Germ<T>, Option<DifferentialApproximant<T>>), StepFailure> {
    match regime {
        Regime::Relation(model) => {
            let (direct, scale) = ops::taylor_shift(current.coeffs(), q - current.center(), order + 1)
                .map_err(|_| StepFailure::Inadmissible)?;
            let shifted = model.recentered(q).map_err(|_| StepFailure::Inadmissible)?;
            let coeffs = shifted.generate(direct[0], order).map_err(|_| StepFailure::Inadmissible)?;
            let depth = CROSS_CHECK_DEPTH.min(order).min(current.order());
            let consistent = (0..=depth).all(|k| {
                (coeffs[k] - direct[k]).norm() <= policy.overlap_tol * (direct[k].norm() + scale[k])
            });
            if !consistent {
                return Err(StepFailure::Inconsistent);
            }
            let germ = Germ::new(q, coeffs, None).map_err(|_| StepFailure::Inadmissible)?;
            Ok((germ, Some(shifted)))
        }
        Regime::Anchored { anchor, .. } => {
            let germ = recenter_unguarded(anchor, q, order).map_err(|_| StepFailure::Inadmissible)?;
            Ok((germ, None))
        }
    }
}

/// Continues `g` along `path`, returning the chain of germs.
///
/// Each step moves to the furthest path point within `step_fraction` of the current reach; a
/// failed step is halved, and the trace stalls once the admissible step drops below `min_step`.
/// Germs are carried at order `max(policy.order, WORKING_ORDER)` and reported at `policy.order`.
pub fn continue_along_path<T: Real>(
    g: &Germ<T>,
    path: &PathSpec<T>,
    policy: &StepPolicy<T>,
) -> Result<ContinuationTrace<T>> {
    policy.validate()?;
    let offset = (g.center() - path.start()).norm();
    if offset > lit::<T>(START_TOL) * T::one().max(path.start().norm()) {
        return Err(Error::InvalidInput(format!(
            "germ center is {} away from the path start",
            to_f64(offset)
        )));
    }
    let pts = path.polyline(lit(ARC_SAMPLE_ANGLE));
    let mut cursor = Cursor::start(&pts);
    let order = policy.order.max(WORKING_ORDER);
    let (mut regime, mut current) = Regime::start(g, order);
    let mut germs = vec![g.clone()];
    let mut step_points = vec![g.center()];
    let stalled = |germs: Vec<Germ<T>>, step_points: Vec<Complex<T>>, at: Complex<T>| ContinuationTrace {
        germs,
        step_points,
        status: TraceStatus::Stalled,
        stall_point: Some(at),
    };

    for _ in 0..MAX_STEPS {
        if cursor.at_end(&pts) {
            return Ok(ContinuationTrace { germs, step_points, status: TraceStatus::Completed, stall_point: None });
        }
        let mut limit = policy.step_fraction * regime.reach(&current);
        loop {
            let target = cursor.furthest_within(&pts, current.center(), limit);
            let reaches_end = target.at_end(&pts);
            if !(limit >= policy.min_step) && !reaches_end {
                let at = current.center();
                return Ok(stalled(germs, step_points, at));
            }
            let q = target.point();
            if reaches_end && q == current.center() {
                cursor = target;
                break;
            }
            match attempt(&regime, &current, q, order, policy) {
                Ok((next, model)) => {
                    if let (Regime::Relation(m), Some(shifted)) = (&mut regime, model) {
                        *m = shifted;
                    }
                    step_points.push(q);
                    germs.push(next.truncated(policy.order));
                    current = next;
                    cursor = target;
                    break;
                }
                Err(StepFailure::Inconsistent) => {
                    regime = Regime::anchored(&current);
                    limit = policy.step_fraction * regime.reach(&current);
                }
                Err(StepFailure::Inadmissible) => limit = limit / lit(2.0),
            }
        }
    }
    let at = current.center();
    Ok(stalled(germs, step_points, at))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonodromyClass {
    Identity,
    Negation,
    Other,
}

impl MonodromyClass {
    pub fn name(self) -> &'static str {
        match self {
            MonodromyClass::Identity => "identity",
            MonodromyClass::Negation => "negation",
            MonodromyClass::Other => "other",
        }
    }

    /// One distance within `tol` and the other at least `100 tol` away.
    pub fn classify<T: Real>(to_initial: T, to_negated: T, tol: T) -> Self {
        let far = lit::<T>(100.0) * tol;
        if to_initial <= tol && to_negated >= far {
            MonodromyClass::Identity
        } else if to_negated <= tol && to_initial >= far {
            MonodromyClass::Negation
        } else {
            MonodromyClass::Other
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MonodromyReport<T: Real> {
    pub distance_to_initial: T,
    pub distance_to_negated_initial: T,
    pub classification: MonodromyClass,
    pub trace: ContinuationTrace<T>,
}

/// Continues `g` around a closed loop and compares the returning germ with `g` and `-g`.
pub fn monodromy_loop<T: Real>(
    g: &Germ<T>,
    loop_path: &PathSpec<T>,
    policy: &StepPolicy<T>,
) -> Result<MonodromyReport<T>> {
    if !loop_path.is_closed() {
        return Err(Error::InvalidInput("monodromy needs a closed loop".into()));
    }
    let trace = continue_along_path(g, loop_path, policy)?;
    if let Some(at) = trace.stall_point {
        return Err(Error::StalledLoop { re: to_f64(at.re), im: to_f64(at.im) });
    }
    let last = trace.last();
    let depth = MONODROMY_DEPTH.min(last.order()).min(g.order());
    let distance_to_initial = germ_distance(g, last, depth)?;
    let distance_to_negated_initial = germ_distance(&g.negated(), last, depth)?;
    Ok(MonodromyReport {
        distance_to_initial,
        distance_to_negated_initial,
        classification: MonodromyClass::classify(distance_to_initial, distance_to_negated_initial, policy.overlap_tol),
        trace,
    })
}
