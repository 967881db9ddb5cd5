//! JSON documents for germs and paths, and deterministic number formatting.
//!
//! Every float is written with 17 significant digits (`{:.16e}`), which round-trips `f64`
//! exactly and makes reports byte-identical across runs.

use std::io;

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use serde_json::ser::{CompactFormatter, Formatter};

use crate::continuation::{PathSpec, Segment};
use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Real};
use crate::series::Germ;

/// A complex number as `[re, im]`.
pub type Pair = [f64; 2];

pub fn pair<T: Real>(z: Complex<T>) -> Pair {
    [to_f64(z.re), to_f64(z.im)]
}

pub fn complex<T: Real>(p: Pair) -> Complex<T> {
    Complex::new(lit(p[0]), lit(p[1]))
}

/// `{"center": [re, im], "coeffs": [[re, im], ...], "radius_hint": number | null}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GermDoc {
    pub center: Pair,
    pub coeffs: Vec<Pair>,
    #[serde(default)]
    pub radius_hint: Option<f64>,
}

impl GermDoc {
    pub fn from_germ<T: Real>(g: &Germ<T>) -> Self {
        Self {
            center: pair(g.center()),
            coeffs: g.coeffs().iter().map(|&a| pair(a)).collect(),
            radius_hint: g.radius_hint().map(to_f64),
        }
    }

    pub fn to_germ<T: Real>(&self) -> Result<Germ<T>> {
        Germ::new(complex(self.center), self.coeffs.iter().map(|&p| complex(p)).collect(), self.radius_hint.map(lit))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SegmentDoc {
    Line { from: Pair, to: Pair },
    Arc { center: Pair, radius: f64, from_angle: f64, to_angle: f64 },
}

/// `{"segments": [{"line": {...}} | {"arc": {...}}, ...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathDoc {
    pub segments: Vec<SegmentDoc>,
}

impl PathDoc {
    pub fn from_path<T: Real>(p: &PathSpec<T>) -> Self {
        let segments = p
            .segments()
            .iter()
            .map(|s| match *s {
                Segment::Line { from, to } => SegmentDoc::Line { from: pair(from), to: pair(to) },
                Segment::Arc { center, radius, angle_start, angle_end } => SegmentDoc::Arc {
                    center: pair(center),
                    radius: to_f64(radius),
                    from_angle: to_f64(angle_start),
                    to_angle: to_f64(angle_end),
                },
            })
            .collect();
        Self { segments }
    }

    pub fn to_path<T: Real>(&self) -> Result<PathSpec<T>> {
        let segments = self
            .segments
            .iter()
            .map(|s| match *s {
                SegmentDoc::Line { from, to } => Segment::Line { from: complex(from), to: complex(to) },
                SegmentDoc::Arc { center, radius, from_angle, to_angle } => Segment::Arc {
                    center: complex(center),
                    radius: lit(radius),
                    angle_start: lit(from_angle),
                    angle_end: lit(to_angle),
                },
            })
            .collect();
        PathSpec::new(segments)
    }
}

/// Formats a float with 17 significant digits; non-finite values become `null` in JSON.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Default)]
struct FixedDigits(CompactFormatter);

impl Formatter for FixedDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            writer.write_all(format_f64(value).as_bytes())
        } else {
            writer.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

/// Compact JSON with fixed-digit floats.
pub fn to_json<S: Serialize>(value: &S) -> Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, FixedDigits::default());
    value.serialize(&mut ser).map_err(|e| Error::InvalidInput(format!("serialization failed: {e}")))?;
    String::from_utf8(out).map_err(|e| Error::InvalidInput(e.to_string()))
}

pub fn germ_from_json<T: Real>(text: &str) -> Result<Germ<T>> {
    let doc: GermDoc =
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("malformed germ JSON: {e}")))?;
    doc.to_germ()
}

pub fn path_from_json<T: Real>(text: &str) -> Result<PathSpec<T>> {
    let doc: PathDoc =
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("malformed path JSON: {e}")))?;
    doc.to_path()
}

/// CSV text with a header row; cells are written as given.
pub fn to_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
