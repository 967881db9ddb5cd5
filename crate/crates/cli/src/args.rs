use std::collections::BTreeMap;
use std::path::PathBuf;

use anacont::series::NamedGerm;
use anacont::Complex64;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "anacont", version, about = "Analytic continuation engine and verifiers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Also write plot-ready CSV rows to this file.
    #[arg(long, global = true)]
    pub emit_csv: Option<PathBuf>,
    /// Seed for pseudo-random samples (ChaCha8).
    #[arg(long, global = true, default_value_t = anacont::sampling::DEFAULT_SEED)]
    pub seed: u64,
    /// Tolerance override, `name=value`; may be repeated.
    #[arg(long = "tol", global = true, value_parser = parse_override)]
    pub tol: Vec<(String, f64)>,
}

impl Common {
    pub fn overrides(&self) -> BTreeMap<String, f64> {
        self.tol.iter().cloned().collect()
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Continue a germ along a path.
    Continue(ContinueArgs),
    /// Continue a germ around a closed loop and classify the returning germ.
    Monodromy(MonodromyArgs),
    /// Radial blow-up probes of the lacunary series at dyadic directions.
    BoundaryProbe(BoundaryProbeArgs),
    /// Rotate Lewy's integral once around the origin and compare with its derivative.
    LewyVerify(LewyArgs),
    /// Functional-equation residuals of the Laplace-Gamma integral.
    LaplaceVerify(LaplaceArgs),
    /// Radius table of inverse germs of a Blaschke product with paired zeros.
    BlaschkeDemo(BlaschkeArgs),
}

#[derive(Debug, Args)]
pub struct GermSource {
    /// Named germ.
    #[arg(long, value_parser = parse_named, conflicts_with = "germ_file")]
    pub germ: Option<NamedGerm>,
    /// Germ JSON file.
    #[arg(long)]
    pub germ_file: Option<PathBuf>,
    /// Truncation order of named germs and produced germs.
    #[arg(long, default_value_t = 64)]
    pub order: usize,
}

#[derive(Debug, Args)]
pub struct ContinueArgs {
    #[command(flatten)]
    pub source: GermSource,
    /// Path segment, `line:x0,y0:x1,y1` or `arc:cx,cy:r:a0:a1`; may be repeated.
    #[arg(long = "path", conflicts_with = "path_file")]
    pub path: Vec<String>,
    /// Path JSON file.
    #[arg(long)]
    pub path_file: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LoopShape {
    UnitCircle,
}

#[derive(Debug, Args)]
pub struct MonodromyArgs {
    #[command(flatten)]
    pub source: GermSource,
    /// Built-in loop.
    #[arg(long = "loop", value_enum, conflicts_with_all = ["path", "path_file"])]
    pub loop_shape: Option<LoopShape>,
    /// Signed number of turns for the built-in loop.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub turns: f64,
    #[arg(long = "path", conflicts_with = "path_file")]
    pub path: Vec<String>,
    #[arg(long)]
    pub path_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BoundaryProbeArgs {
    /// Directions are the `2^m`-th roots of unity.
    #[arg(long, default_value_t = 3)]
    pub m: u32,
    /// Largest radius index `j` (radius `1 - 2^-j`).
    #[arg(long, default_value_t = 40)]
    pub m_max: u32,
    /// Probe a single direction instead of all of them.
    #[arg(long)]
    pub k: Option<u64>,
    /// Number of seeded samples for the functional-equation check.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct LewyArgs {
    /// Base point, `re` or `re,im`.
    #[arg(long, value_parser = parse_complex, default_value = "1", allow_negative_numbers = true)]
    pub z: Complex64,
    /// Number of rotation increments for the loop.
    #[arg(long, default_value_t = 8)]
    pub steps: usize,
}

#[derive(Debug, Args)]
pub struct LaplaceArgs {
    /// Evaluation point, `re` or `re,im`; may be repeated. Defaults to the 5x5 grid.
    #[arg(long, value_parser = parse_complex, allow_negative_numbers = true)]
    pub z: Vec<Complex64>,
}

#[derive(Debug, Args)]
pub struct BlaschkeArgs {
    #[arg(long, default_value_t = 8)]
    pub pairs: usize,
    /// Angle between consecutive pairs, radians.
    #[arg(long, default_value_t = 0.3, allow_negative_numbers = true)]
    pub angle_step: f64,
    #[arg(long, default_value_t = 48)]
    pub order: usize,
}

fn parse_named(s: &str) -> Result<NamedGerm, String> {
    s.parse().map_err(|e: anacont::Error| e.to_string())
}

fn parse_override(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s.split_once('=').ok_or_else(|| format!("expected name=value, got `{s}`"))?;
    let value: f64 = value.trim().parse().map_err(|_| format!("`{value}` is not a number"))?;
    Ok((name.trim().to_string(), value))
}

pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |p: &str| p.parse::<f64>().map_err(|_| format!("`{p}` is not a number"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected `re` or `re,im`, got `{s}`")),
    }
}

/// Parses `line:x0,y0:x1,y1` or `arc:cx,cy:r:a0:a1`.
pub fn parse_segment(s: &str) -> Result<anacont::continuation::Segment<f64>, CliError> {
    use anacont::continuation::Segment;
    let fields: Vec<&str> = s.split(':').collect();
    let complex = |p: &str| parse_complex(p).map_err(CliError::Usage);
    let real = |p: &str| p.trim().parse::<f64>().map_err(|_| CliError::Usage(format!("`{p}` is not a number")));
    match fields.as_slice() {
        ["line", from, to] => Ok(Segment::Line { from: complex(from)?, to: complex(to)? }),
        ["arc", center, radius, a0, a1] => Ok(Segment::Arc {
            center: complex(center)?,
            radius: real(radius)?,
            angle_start: real(a0)?,
            angle_end: real(a1)?,
        }),
        _ => Err(CliError::Usage(format!("cannot parse path segment `{s}`"))),
    }
}
