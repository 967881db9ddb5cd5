use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anacont::blaschke::{covering_failure_demo, KoebeReport};
use anacont::continuation::{
    continue_along_path, monodromy_loop, ContinuationTrace, PathSpec, StepPolicy, TraceStatus,
};
use anacont::io::{format_f64, germ_from_json, pair, path_from_json, GermDoc, Pair};
use anacont::lacunary::{boundary_scan, functional_equation_residual, radial_probe, RadialProbeReport};
use anacont::laplace::{contour_translation_gap, nontriviality_check, verify_functional_equation, REFINE_TOL};
use anacont::lewy::{lewy_continue_loop, lewy_derivative_direct, lewy_eval};
use anacont::sampling::disk_samples;
use anacont::series::make_named_germ;
use anacont::{Complex64, ContourSpec64, Germ64, PathSpec64, QuadratureSpec64, StepPolicy64};
use serde::Serialize;

use crate::args::{
    parse_segment, BlaschkeArgs, BoundaryProbeArgs, ContinueArgs, GermSource, LaplaceArgs, LewyArgs, LoopShape,
    MonodromyArgs,
};
use crate::error::CliError;

/// Radius of the disk sampled for the lacunary functional-equation check.
const FUNCTIONAL_EQ_RADIUS: f64 = 0.7;
const FUNCTIONAL_EQ_TOL: f64 = 1e-10;
const LEWY_REL_TOL: f64 = 1e-6;
const LAPLACE_RESIDUAL_TOL: f64 = 1e-6;

/// JSON report plus CSV rows whose count matches the report's main array.
pub struct Output {
    pub json: String,
    pub csv_header: Vec<&'static str>,
    pub csv_rows: Vec<Vec<String>>,
}

impl Output {
    fn new<S: Serialize>(report: &S, csv_header: Vec<&'static str>, csv_rows: Vec<Vec<String>>) -> Result<Self, CliError> {
        let mut json = anacont::io::to_json(report)?;
        json.push('\n');
        Ok(Self { json, csv_header, csv_rows })
    }
}

/// Applies `--tol` overrides, rejecting names the command does not know.
struct Overrides(BTreeMap<String, f64>);

impl Overrides {
    fn take(&mut self, name: &str, default: f64) -> f64 {
        self.0.remove(name).unwrap_or(default)
    }

    fn finish(self) -> Result<(), CliError> {
        match self.0.keys().next() {
            None => Ok(()),
            Some(name) => Err(CliError::Usage(format!("unknown tolerance `{name}` for this command"))),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn load_germ(source: &GermSource) -> Result<(String, Germ64), CliError> {
    match (&source.germ, &source.germ_file) {
        (Some(name), None) => Ok((name.to_string(), make_named_germ(*name, source.order)?)),
        (None, Some(path)) => Ok((path.display().to_string(), germ_from_json(&read(path)?)?)),
        _ => Err(CliError::Usage("exactly one of --germ or --germ-file is required".into())),
    }
}

fn load_path(segments: &[String], file: &Option<std::path::PathBuf>) -> Result<Option<PathSpec64>, CliError> {
    if let Some(path) = file {
        return Ok(Some(path_from_json(&read(path)?)?));
    }
    if segments.is_empty() {
        return Ok(None);
    }
    let parsed = segments.iter().map(|s| parse_segment(s)).collect::<Result<Vec<_>, _>>()?;
    Ok(Some(PathSpec::new(parsed)?))
}

fn step_policy(order: usize, tol: &mut Overrides) -> Result<StepPolicy64, CliError> {
    let d = StepPolicy64::default();
    let policy = StepPolicy {
        step_fraction: tol.take("step_fraction", d.step_fraction),
        min_step: tol.take("min_step", d.min_step),
        order,
        overlap_tol: tol.take("overlap_tol", d.overlap_tol),
    };
    policy.validate()?;
    Ok(policy)
}

fn status_name(status: TraceStatus) -> &'static str {
    match status {
        TraceStatus::Completed => "completed",
        TraceStatus::Stalled => "stalled",
    }
}

fn step_rows(points: &[Complex64]) -> Vec<Vec<String>> {
    points
        .iter()
        .enumerate()
        .map(|(i, p)| vec![i.to_string(), format_f64(p.re), format_f64(p.im)])
        .collect()
}

#[derive(Serialize)]
struct TraceDoc {
    status: &'static str,
    stall_point: Option<Pair>,
    step_points: Vec<Pair>,
    germs: Vec<GermDoc>,
}

impl TraceDoc {
    fn new(trace: &ContinuationTrace<f64>) -> Self {
        Self {
            status: status_name(trace.status),
            stall_point: trace.stall_point.map(pair),
            step_points: trace.step_points.iter().map(|&p| pair(p)).collect(),
            germs: trace.germs.iter().map(GermDoc::from_germ).collect(),
        }
    }
}

#[derive(Serialize)]
struct ContinueReport {
    command: &'static str,
    germ: String,
    order: usize,
    seed: u64,
    #[serde(flatten)]
    trace: TraceDoc,
}

pub fn run_continue(args: &ContinueArgs, seed: u64, tol: BTreeMap<String, f64>) -> Result<Output, CliError> {
    let mut tol = Overrides(tol);
    let policy = step_policy(args.source.order, &mut tol)?;
    tol.finish()?;
    let (name, germ) = load_germ(&args.source)?;
    let path = load_path(&args.path, &args.path_file)?
        .ok_or_else(|| CliError::Usage("--path or --path-file is required".into()))?;
    let trace = continue_along_path(&germ, &path, &policy)?;
    let rows = step_rows(&trace.step_points);
    let report = ContinueReport {
        command: "continue",
        germ: name,
        order: policy.order,
        seed,
        trace: TraceDoc::new(&trace),
    };
    Output::new(&report, vec!["index", "re", "im"], rows)
}

#[derive(Serialize)]
struct MonodromyDoc {
    command: &'static str,
    germ: String,
    order: usize,
    seed: u64,
    classification: &'static str,
    distance_to_initial: f64,
    distance_to_negated_initial: f64,
    overlap_tol: f64,
    step_points: Vec<Pair>,
    final_germ: GermDoc,
}

pub fn run_monodromy(args: &MonodromyArgs, seed: u64, tol: BTreeMap<String, f64>) -> Result<Output, CliError> {
    let mut tol = Overrides(tol);
    let policy = step_policy(args.source.order, &mut tol)?;
    tol.finish()?;
    let (name, germ) = load_germ(&args.source)?;
    let path = match (load_path(&args.path, &args.path_file)?, args.loop_shape) {
        (Some(path), _) => path,
        (None, Some(LoopShape::UnitCircle) | None) => {
            if !(args.turns.is_finite() && args.turns != 0.0) {
                return Err(CliError::Usage("--turns must be a nonzero number".into()));
            }
            PathSpec::unit_circle(args.turns)
        }
    };
    let report = monodromy_loop(&germ, &path, &policy)?;
    let rows = step_rows(&report.trace.step_points);
    let doc = MonodromyDoc {
        command: "monodromy",
        germ: name,
        order: policy.order,
        seed,
        classification: report.classification.name(),
        distance_to_initial: report.distance_to_initial,
        distance_to_negated_initial: report.distance_to_negated_initial,
        overlap_tol: policy.overlap_tol,
        step_points: report.trace.step_points.iter().map(|&p| pair(p)).collect(),
        final_germ: GermDoc::from_germ(report.trace.last()),
    };
    Output::new(&doc, vec!["index", "re", "im"], rows)
}

#[derive(Serialize)]
struct ProbeSample {
    j: u32,
    r: f64,
    abs_h: f64,
}

#[derive(Serialize)]
struct ProbeDoc {
    k: u64,
    m: u32,
    direction: Pair,
    growth_slope: f64,
    blow_up_detected: bool,
    zero_free: bool,
    samples: Vec<ProbeSample>,
}

impl ProbeDoc {
    fn new(r: &RadialProbeReport<f64>) -> Self {
        Self {
            k: r.k,
            m: r.m,
            direction: pair(r.direction),
            growth_slope: r.growth_slope,
            blow_up_detected: r.blow_up_detected,
            zero_free: r.zero_free,
            samples: r
                .indices
                .iter()
                .zip(&r.radii)
                .zip(&r.values)
                .map(|((&j, &r), v)| ProbeSample { j, r, abs_h: v.norm() })
                .collect(),
        }
    }
}

#[derive(Serialize)]
struct FunctionalEqDoc {
    samples: usize,
    radius: f64,
    max_residual: f64,
    passes: bool,
}

#[derive(Serialize)]
struct BoundaryDoc {
    command: &'static str,
    m: u32,
    m_max: u32,
    seed: u64,
    all_blow_up: bool,
    probes: Vec<ProbeDoc>,
    functional_equation: FunctionalEqDoc,
}

pub fn run_boundary_probe(args: &BoundaryProbeArgs, seed: u64, tol: BTreeMap<String, f64>) -> Result<Output, CliError> {
    let mut tol = Overrides(tol);
    let residual_tol = tol.take("residual", FUNCTIONAL_EQ_TOL);
    tol.finish()?;
    let reports = match args.k {
        Some(k) => vec![radial_probe::<f64>(k, args.m, args.m_max)?],
        None => boundary_scan::<f64>(args.m, args.m_max)?,
    };
    let max_residual = disk_samples::<f64>(seed, args.samples, FUNCTIONAL_EQ_RADIUS)
        .into_iter()
        .map(|z| functional_equation_residual(z, anacont::lacunary::PROBE_TOL))
        .try_fold(0.0f64, |m, r| r.map(|r| m.max(r)))?;
    let probes: Vec<ProbeDoc> = reports.iter().map(ProbeDoc::new).collect();
    let rows = probes
        .iter()
        .flat_map(|p| {
            p.samples.iter().map(move |s| {
                vec![
                    p.k.to_string(),
                    p.m.to_string(),
                    s.j.to_string(),
                    format_f64(s.r),
                    format_f64(s.abs_h),
                    format_f64(p.growth_slope),
                    p.blow_up_detected.to_string(),
                ]
            })
        })
        .collect();
    let doc = BoundaryDoc {
        command: "boundary-probe",
        m: args.m,
        m_max: args.m_max,
        seed,
        all_blow_up: probes.iter().all(|p| p.blow_up_detected),
        probes,
        functional_equation: FunctionalEqDoc {
            samples: args.samples,
            radius: FUNCTIONAL_EQ_RADIUS,
            max_residual,
            passes: max_residual <= residual_tol,
        },
    };
    Output::new(&doc, vec!["k", "m", "j", "r", "abs_h", "slope", "blow_up"], rows)
}

#[derive(Serialize)]
struct SectorDoc {
    theta_from: f64,
    theta_to: f64,
    witness: Pair,
    mismatch: f64,
}

#[derive(Serialize)]
struct LewyDoc {
    command: &'static str,
    z: Pair,
    steps: usize,
    seed: u64,
    start_value: Pair,
    loop_value: Pair,
    derivative_direct: Pair,
    rel_error: f64,
    passes: bool,
    sectors: Vec<SectorDoc>,
}

pub fn run_lewy(args: &LewyArgs, seed: u64, tol: BTreeMap<String, f64>) -> Result<Output, CliError> {
    let mut tol = Overrides(tol);
    let d = QuadratureSpec64::default();
    let q = QuadratureSpec64 {
        s_min: tol.take("s_min", d.s_min),
        s_max: tol.take("s_max", d.s_max),
        refine_tol: tol.take("refine_tol", d.refine_tol),
        ..d
    };
    let rel_tol = tol.take("rel_error", LEWY_REL_TOL);
    tol.finish()?;
    q.validate()?;
    let looped = lewy_continue_loop(args.z, args.steps, &q)?;
    let direct = lewy_derivative_direct(args.z, &q)?;
    let start = lewy_eval(args.z, 0.0, &q)?;
    let rel_error = (looped.result.value - direct).norm() / direct.norm();
    let sectors: Vec<SectorDoc> = looped
        .overlaps
        .iter()
        .map(|o| SectorDoc { theta_from: o.theta_from, theta_to: o.theta_to, witness: pair(o.witness), mismatch: o.mismatch })
        .collect();
    let rows = sectors
        .iter()
        .map(|s| {
            vec![
                format_f64(s.theta_from),
                format_f64(s.theta_to),
                format_f64(s.witness[0]),
                format_f64(s.witness[1]),
                format_f64(s.mismatch),
            ]
        })
        .collect();
    let doc = LewyDoc {
        command: "lewy-verify",
        z: pair(args.z),
        steps: args.steps,
        seed,
        start_value: pair(start.value),
        loop_value: pair(looped.result.value),
        derivative_direct: pair(direct),
        rel_error,
        passes: rel_error <= rel_tol,
        sectors,
    };
    Output::new(&doc, vec!["theta_from", "theta_to", "witness_re", "witness_im", "mismatch"], rows)
}

#[derive(Serialize)]
struct GridPoint {
    z: Pair,
    lhs: Pair,
    rhs: Pair,
    rel_residual: f64,
}

#[derive(Serialize)]
struct ContourDoc {
    base: Pair,
    direction: Pair,
    half_extent: f64,
    nodes: usize,
}

#[derive(Serialize)]
struct LaplaceDoc {
    command: &'static str,
    seed: u64,
    contour: ContourDoc,
    max_residual: f64,
    passes: bool,
    translation_gap: f64,
    nontriviality: f64,
    grid: Vec<GridPoint>,
}

fn default_grid() -> Vec<Complex64> {
    let steps = [0.0, 0.25, 0.5, 0.75, 1.0];
    let ims = [-0.5, -0.25, 0.0, 0.25, 0.5];
    steps.iter().flat_map(|&re| ims.iter().map(move |&im| Complex64::new(re, im))).collect()
}

pub fn run_laplace(args: &LaplaceArgs, seed: u64, tol: BTreeMap<String, f64>) -> Result<Output, CliError> {
    let mut tol = Overrides(tol);
    let d = ContourSpec64::default();
    let contour = ContourSpec64 { half_extent: tol.take("half_extent", d.half_extent), ..d };
    let residual_tol = tol.take("residual", LAPLACE_RESIDUAL_TOL);
    tol.finish()?;
    contour.validate()?;
    let zs = if args.z.is_empty() { default_grid() } else { args.z.clone() };
    let reports = verify_functional_equation(&zs, &contour)?;
    let max_residual = reports.iter().map(|r| r.rel_residual).fold(0.0, f64::max);
    let translation_gap = contour_translation_gap(zs[0], &contour)?;
    let nontriviality = nontriviality_check(Complex64::new(0.0, 0.0), Complex64::new(0.25, 0.0), &contour)?;
    let rows = reports
        .iter()
        .map(|r| vec![format_f64(r.z.re), format_f64(r.z.im), format_f64(r.rel_residual)])
        .collect();
    let doc = LaplaceDoc {
        command: "laplace-verify",
        seed,
        contour: ContourDoc {
            base: pair(contour.base),
            direction: pair(contour.direction),
            half_extent: contour.half_extent,
            nodes: contour.nodes,
        },
        max_residual,
        passes: max_residual <= residual_tol && translation_gap <= 100.0 * REFINE_TOL,
        translation_gap,
        nontriviality,
        grid: reports
            .iter()
            .map(|r| GridPoint { z: pair(r.z), lhs: pair(r.lhs), rhs: pair(r.rhs), rel_residual: r.rel_residual })
            .collect(),
    };
    Output::new(&doc, vec!["re_z", "im_z", "rel_residual"], rows)
}

#[derive(Serialize)]
struct KoebeDoc {
    n: usize,
    a_n: Pair,
    abs_a_n: f64,
    deriv_b: Pair,
    deriv_f: Pair,
    r_n: f64,
    bound_4_gap: Option<f64>,
    bound_shrink: f64,
    passes_gap_bound: Option<bool>,
    passes_shrink_bound: bool,
    chain_rule_defect: f64,
    schwarz_pick: f64,
    koebe_ratio: f64,
    partner_clearance: Option<f64>,
}

impl KoebeDoc {
    fn new(r: &KoebeReport<f64>) -> Self {
        Self {
            n: r.n,
            a_n: pair(r.a_n),
            abs_a_n: r.a_n.norm(),
            deriv_b: pair(r.deriv_b),
            deriv_f: pair(r.deriv_f),
            r_n: r.r_n,
            bound_4_gap: r.bound_4_gap,
            bound_shrink: r.bound_shrink,
            passes_gap_bound: r.passes_gap_bound,
            passes_shrink_bound: r.passes_shrink_bound,
            chain_rule_defect: r.chain_rule_defect,
            schwarz_pick: r.schwarz_pick,
            koebe_ratio: r.koebe_ratio,
            partner_clearance: r.partner_clearance,
        }
    }
}

#[derive(Serialize)]
struct BlaschkeDoc {
    command: &'static str,
    pairs: usize,
    angle_step: f64,
    order: usize,
    seed: u64,
    all_pass_shrink: bool,
    all_pass_gap: bool,
    max_chain_rule_defect: f64,
    max_schwarz_pick: f64,
    reports: Vec<KoebeDoc>,
}

fn optional(x: Option<f64>) -> String {
    x.map(format_f64).unwrap_or_default()
}

pub fn run_blaschke(args: &BlaschkeArgs, seed: u64, tol: BTreeMap<String, f64>) -> Result<Output, CliError> {
    Overrides(tol).finish()?;
    let reports = covering_failure_demo::<f64>(args.pairs, args.angle_step, args.order)?;
    let docs: Vec<KoebeDoc> = reports.iter().map(KoebeDoc::new).collect();
    let rows = docs
        .iter()
        .map(|d| {
            vec![
                d.n.to_string(),
                format_f64(d.abs_a_n),
                optional(d.bound_4_gap.map(|b| b / 4.0)),
                format_f64(d.r_n),
                format_f64(d.bound_shrink),
                d.passes_gap_bound.map(|p| p.to_string()).unwrap_or_default(),
                d.passes_shrink_bound.to_string(),
            ]
        })
        .collect();
    let doc = BlaschkeDoc {
        command: "blaschke-demo",
        pairs: args.pairs,
        angle_step: args.angle_step,
        order: args.order,
        seed,
        all_pass_shrink: docs.iter().all(|d| d.passes_shrink_bound),
        all_pass_gap: docs.iter().all(|d| d.passes_gap_bound != Some(false)),
        max_chain_rule_defect: docs.iter().map(|d| d.chain_rule_defect).fold(0.0, f64::max),
        max_schwarz_pick: docs.iter().map(|d| d.schwarz_pick).fold(0.0, f64::max),
        reports: docs,
    };
    Output::new(&doc, vec!["n", "abs_a_2n", "gap", "r_2n", "bound", "pass_gap_bound", "pass_shrink_bound"], rows)
}
