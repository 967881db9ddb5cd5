use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{from_usize, lit, Real};

/// Largest angular increment used when flattening arcs.
pub const ARC_SAMPLE_ANGLE: f64 = 0.1;

const CONTIGUITY_TOL: f64 = 1e-12;

/// One piece of a path.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Segment<T: Real> {
    Line { from: Complex<T>, to: Complex<T> },
    /// Circular arc with signed sweep from `angle_start` to `angle_end` (counterclockwise positive).
    Arc { center: Complex<T>, radius: T, angle_start: T, angle_end: T },
}

impl<T: Real> Segment<T> {
    pub fn start(&self) -> Complex<T> {
        match *self {
            Segment::Line { from, .. } => from,
            Segment::Arc { center, radius, angle_start, .. } => {
                center + Complex::from_polar(radius, angle_start)
            }
        }
    }

    pub fn end(&self) -> Complex<T> {
        match *self {
            Segment::Line { to, .. } => to,
            Segment::Arc { center, radius, angle_end, .. } => {
                center + Complex::from_polar(radius, angle_end)
            }
        }
    }

    pub fn reversed(&self) -> Self {
        match *self {
            Segment::Line { from, to } => Segment::Line { from: to, to: from },
            Segment::Arc { center, radius, angle_start, angle_end } => {
                Segment::Arc { center, radius, angle_start: angle_end, angle_end: angle_start }
            }
        }
    }
}

/// Contiguous piecewise path made of lines and arcs.
#[derive(Clone, Debug, PartialEq)]
pub struct PathSpec<T: Real> {
    segments: Vec<Segment<T>>,
}

impl<T: Real> PathSpec<T> {
    pub fn new(segments: Vec<Segment<T>>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::InvalidInput("a path needs at least one segment".into()));
        }
        for (i, s) in segments.iter().enumerate() {
            if let Segment::Arc { radius, angle_start, angle_end, .. } = s {
                if !(*radius > T::zero()) || !angle_start.is_finite() || !angle_end.is_finite() {
                    return Err(Error::InvalidInput(format!("segment {i}: invalid arc")));
                }
            }
            let (a, b) = (s.start(), s.end());
            if !(a.re.is_finite() && a.im.is_finite() && b.re.is_finite() && b.im.is_finite()) {
                return Err(Error::InvalidInput(format!("segment {i}: non-finite endpoint")));
            }
        }
        for (i, w) in segments.windows(2).enumerate() {
            let gap = (w[0].end() - w[1].start()).norm();
            if gap > tolerance_at(w[1].start()) {
                return Err(Error::InvalidInput(format!(
                    "segments {i} and {} are not contiguous (gap {gap})",
                    i + 1
                )));
            }
        }
        Ok(Self { segments })
    }

    pub fn line(from: Complex<T>, to: Complex<T>) -> Self {
        Self { segments: vec![Segment::Line { from, to }] }
    }

    pub fn arc(center: Complex<T>, radius: T, angle_start: T, angle_end: T) -> Result<Self> {
        Self::new(vec![Segment::Arc { center, radius, angle_start, angle_end }])
    }

    /// Unit circle starting and ending at 1; negative `turns` run clockwise.
    pub fn unit_circle(turns: T) -> Self {
        let sweep = lit::<T>(2.0) * T::PI() * turns;
        Self {
            segments: vec![Segment::Arc {
                center: Complex::new(T::zero(), T::zero()),
                radius: T::one(),
                angle_start: T::zero(),
                angle_end: sweep,
            }],
        }
    }

    pub fn segments(&self) -> &[Segment<T>] {
        &self.segments
    }

    pub fn start(&self) -> Complex<T> {
        self.segments[0].start()
    }

    pub fn end(&self) -> Complex<T> {
        self.segments[self.segments.len() - 1].end()
    }

    pub fn is_closed(&self) -> bool {
        (self.end() - self.start()).norm() <= tolerance_at(self.start())
    }

    pub fn reversed(&self) -> Self {
        Self { segments: self.segments.iter().rev().map(Segment::reversed).collect() }
    }

    /// Concatenation; fails unless `other` starts where `self` ends.
    pub fn then(&self, other: &Self) -> Result<Self> {
        let mut segments = self.segments.clone();
        segments.extend_from_slice(&other.segments);
        Self::new(segments)
    }

    /// Vertices of the flattened path; arcs are sampled at increments of at most `max_angle`.
    pub fn polyline(&self, max_angle: T) -> Vec<Complex<T>> {
        let mut pts = vec![self.start()];
        for s in &self.segments {
            match *s {
                Segment::Line { to, .. } => pts.push(to),
                Segment::Arc { center, radius, angle_start, angle_end } => {
                    let sweep = angle_end - angle_start;
                    let pieces = (sweep.abs() / max_angle).ceil().to_usize().unwrap_or(1).max(1);
                    for j in 1..=pieces {
                        let angle = angle_start + sweep * from_usize::<T>(j) / from_usize::<T>(pieces);
                        pts.push(center + Complex::from_polar(radius, angle));
                    }
                }
            }
        }
        pts
    }
}

fn tolerance_at<T: Real>(p: Complex<T>) -> T {
    lit::<T>(CONTIGUITY_TOL) * T::one().max(p.norm())
}

/// Position along a polyline: on edge `edge` (from vertex `edge` to `edge + 1`), at `point`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Cursor<T: Real> {
    edge: usize,
    point: Complex<T>,
}

impl<T: Real> Cursor<T> {
    pub fn start(pts: &[Complex<T>]) -> Self {
        Self { edge: 0, point: pts[0] }
    }

    pub fn point(&self) -> Complex<T> {
        self.point
    }

    pub fn at_end(&self, pts: &[Complex<T>]) -> bool {
        self.edge + 1 >= pts.len()
    }

    /// Furthest position such that the path from here to it stays inside the closed disk of
    /// radius `r` around `center`. Assumes the current point lies in that disk.
    pub fn furthest_within(&self, pts: &[Complex<T>], center: Complex<T>, r: T) -> Self {
        let mut edge = self.edge;
        let mut a = self.point;
        while edge + 1 < pts.len() {
            let b = pts[edge + 1];
            if (b - center).norm() <= r {
                edge += 1;
                a = b;
                continue;
            }
            let u = a - center;
            let v = b - a;
            let qa = v.norm_sqr();
            let qb = u.re * v.re + u.im * v.im;
            let qc = u.norm_sqr() - r * r;
            let disc = (qb * qb - qa * qc).max(T::zero());
            let t = ((-qb + disc.sqrt()) / qa).max(T::zero()).min(T::one());
            return Self { edge, point: a + v * t };
        }
        Self { edge: pts.len() - 1, point: a }
    }
}
