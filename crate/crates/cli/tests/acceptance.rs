//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any criterion fails.

use std::f64::consts::{FRAC_PI_4, PI};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use anacont::blaschke::{blaschke_derivative, covering_failure_demo, make_pair_sequence};
use anacont::continuation::{continue_along_path, monodromy_loop, MonodromyClass, PathSpec, StepPolicy, TraceStatus};
use anacont::gamma::{gamma, stirling_check};
use anacont::lacunary::{boundary_scan, functional_equation_residual, PROBE_TOL};
use anacont::laplace::{contour_translation_gap, nontriviality_check, verify_functional_equation};
use anacont::lewy::{contour_shift_check, lewy_continue_loop, lewy_derivative_direct};
use anacont::sampling::{disk_samples, DEFAULT_SEED};
use anacont::series::{estimate_radius, make_named_germ, NamedGerm};
use anacont::{Complex64, ContourSpec64, QuadratureSpec64};

struct Outcome {
    pass: bool,
    detail: String,
}

type Check = fn() -> anacont::Result<Outcome>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn within(elapsed: Duration, limit_s: f64) -> bool {
    elapsed.as_secs_f64() < limit_s
}

fn sqrt_monodromy() -> anacont::Result<Outcome> {
    let start = Instant::now();
    let g = make_named_germ::<f64>(NamedGerm::SqrtAtOne, 32)?;
    let policy = StepPolicy { order: 32, ..StepPolicy::default() };
    let once = monodromy_loop(&g, &PathSpec::unit_circle(1.0), &policy)?;
    let twice = monodromy_loop(&g, &PathSpec::unit_circle(2.0), &policy)?;
    let elapsed = start.elapsed();
    let pass = once.classification == MonodromyClass::Negation
        && twice.classification == MonodromyClass::Identity
        && once.distance_to_negated_initial <= 1e-8
        && twice.distance_to_initial <= 1e-8
        && within(elapsed, 5.0);
    Ok(Outcome {
        pass,
        detail: format!(
            "one loop {} (d={:.1e}), two loops {} (d={:.1e}), {:.2?}",
            once.classification.name(),
            once.distance_to_negated_initial,
            twice.classification.name(),
            twice.distance_to_initial,
            elapsed
        ),
    })
}

fn two_charts() -> anacont::Result<Outcome> {
    let g = make_named_germ::<f64>(NamedGerm::RecipTwoMinusZ, 64)?;
    let trace = continue_along_path(&g, &PathSpec::line(c(0.0, 0.0), c(0.0, 1.0)), &StepPolicy::default())?;
    let last = trace.last();
    let worst = (0..=16)
        .map(|k| (last.coeffs()[k] - c(2.0, -1.0).powi(-(k as i32 + 1))).norm())
        .fold(0.0, f64::max);
    let pass = trace.status == TraceStatus::Completed && (last.center() - c(0.0, 1.0)).norm() <= 1e-12 && worst <= 1e-8;
    Ok(Outcome { pass, detail: format!("max |b_k - (2-i)^-(k+1)| over k<=16 = {worst:.2e}") })
}

fn radius_estimates() -> anacont::Result<Outcome> {
    let r0 = estimate_radius(&make_named_germ::<f64>(NamedGerm::RecipTwoMinusZ, 64)?)?.value;
    let ri = estimate_radius(&make_named_germ::<f64>(NamedGerm::RecipTwoMinusZAtI, 64)?)?.value;
    let s5 = 5f64.sqrt();
    let pass = (1.9..=2.1).contains(&r0) && (0.95 * s5..=1.05 * s5).contains(&ri);
    Ok(Outcome { pass, detail: format!("r(0) = {r0:.4}, r(i) = {ri:.4} (sqrt 5 = {s5:.4})") })
}

fn natural_boundary() -> anacont::Result<Outcome> {
    let start = Instant::now();
    let scan = boundary_scan::<f64>(3, 40)?;
    let min_slope = scan.iter().map(|r| r.growth_slope).fold(f64::INFINITY, f64::min);
    let mut worst = 0.0f64;
    for z in disk_samples::<f64>(DEFAULT_SEED, 200, 0.7) {
        worst = worst.max(functional_equation_residual(z, PROBE_TOL)?);
    }
    let elapsed = start.elapsed();
    let pass = scan.len() == 8 && scan.iter().all(|r| r.blow_up_detected) && worst <= 1e-10 && within(elapsed, 5.0);
    Ok(Outcome {
        pass,
        detail: format!("8 directions, min slope {min_slope:.3}, max residual {worst:.1e}, {elapsed:.2?}"),
    })
}

fn engine_stall() -> anacont::Result<Outcome> {
    let g = make_named_germ::<f64>(NamedGerm::Lacunary, 64)?;
    let trace = continue_along_path(&g, &PathSpec::line(c(0.0, 0.0), c(0.999, 0.0)), &StepPolicy::default())?;
    let gap = trace.stall_point.map(|p| 1.0 - p.norm());
    let pass = trace.status == TraceStatus::Stalled && gap.is_some_and(|g| g <= 0.2);
    Ok(Outcome { pass, detail: format!("stall point {:?}, distance to circle {:?}", trace.stall_point, gap) })
}

fn lewy_resurgence() -> anacont::Result<Outcome> {
    let start = Instant::now();
    let q = QuadratureSpec64::default();
    let mut worst_rel = 0.0f64;
    let mut worst_overlap = 0.0f64;
    for z in [c(1.0, 0.0), c(1.5, 0.0), c(1.0, 0.2)] {
        let looped = lewy_continue_loop(z, 8, &q)?;
        let direct = lewy_derivative_direct(z, &q)?;
        worst_rel = worst_rel.max((looped.result.value - direct).norm() / direct.norm());
        worst_overlap = looped.overlaps.iter().map(|o| o.mismatch).fold(worst_overlap, f64::max);
    }
    let ladder = [10.0, 20.0, 40.0]
        .iter()
        .map(|&r| contour_shift_check(r, FRAC_PI_4, c(1.0, 0.0)))
        .collect::<anacont::Result<Vec<f64>>>()?;
    let elapsed = start.elapsed();
    let pass = worst_rel <= 1e-6
        && worst_overlap <= 1e-7
        && ladder.windows(2).all(|w| w[1] < w[0])
        && ladder[2] < 1e-10
        && within(elapsed, 30.0);
    Ok(Outcome {
        pass,
        detail: format!(
            "max rel {worst_rel:.1e}, max overlap {worst_overlap:.1e}, arc ladder {:.1e}/{:.1e}/{:.1e}, {elapsed:.2?}",
            ladder[0], ladder[1], ladder[2]
        ),
    })
}

fn laplace_solution() -> anacont::Result<Outcome> {
    let start = Instant::now();
    let contour = ContourSpec64::default();
    let grid: Vec<Complex64> = [0.0, 0.25, 0.5, 0.75, 1.0]
        .iter()
        .flat_map(|&re| [-0.5, -0.25, 0.0, 0.25, 0.5].map(|im| c(re, im)))
        .collect();
    let worst = verify_functional_equation(&grid, &contour)?.iter().map(|r| r.rel_residual).fold(0.0, f64::max);
    let mut gap = 0.0f64;
    for z in [c(0.0, 0.0), c(0.3, 0.1), c(0.7, -0.2)] {
        gap = gap.max(contour_translation_gap(z, &contour)?);
    }
    let nontrivial = nontriviality_check(c(0.0, 0.0), c(0.25, 0.0), &contour)?;
    let elapsed = start.elapsed();
    let pass = worst <= 1e-6 && gap <= 1e-8 && nontrivial > 1e-4 && within(elapsed, 30.0);
    Ok(Outcome {
        pass,
        detail: format!(
            "grid max residual {worst:.1e}, translation gap {gap:.1e}, nontriviality {nontrivial:.3}, {elapsed:.2?}"
        ),
    })
}

fn gamma_checks() -> anacont::Result<Outcome> {
    let mut recurrence = 0.0f64;
    for i in -60..=60 {
        let u = c(1.0, 0.0) + c(1.0, 1.0) * (i as f64 * 0.1);
        let next = gamma(u + 1.0)?;
        recurrence = recurrence.max((next - u * gamma(u)?).norm() / next.norm());
    }
    let mut stirling_ok = true;
    let mut worst_ratio = 0.0f64;
    for r in [5.0, 10.0, 20.0, 50.0] {
        for angle in [0.0, FRAC_PI_4, PI / 2.0] {
            let u = Complex64::from_polar(r, angle);
            let dev = stirling_check(u)?;
            stirling_ok &= dev <= 2.0 / r;
            worst_ratio = worst_ratio.max(dev * r / 2.0);
        }
    }
    Ok(Outcome {
        pass: recurrence <= 1e-10 && stirling_ok,
        detail: format!("recurrence {recurrence:.1e}, worst Stirling deviation / envelope {worst_ratio:.3}"),
    })
}

fn covering_failure() -> anacont::Result<Outcome> {
    let start = Instant::now();
    let zs = make_pair_sequence::<f64>(8, 0.3)?;
    let reports = covering_failure_demo::<f64>(8, 0.3, 48)?;
    let shrink = reports
        .iter()
        .all(|r| r.passes_shrink_bound && r.r_n <= 2f64.powi(-((r.n / 2) as i32)) + 1e-12);
    let chain = reports.iter().map(|r| r.chain_rule_defect).fold(0.0, f64::max);
    let mut pick = 0.0f64;
    for &a in zs.points() {
        pick = pick.max(blaschke_derivative(&zs, a)?.norm() * (1.0 - a.norm_sqr()));
    }
    let r0 = reports[0].r_n;
    let tail = reports.iter().filter(|r| r.n / 2 >= 4).map(|r| r.r_n).fold(0.0, f64::max);
    let elapsed = start.elapsed();
    let pass =
        reports.len() == 8 && shrink && chain <= 1e-8 && pick <= 1.0 + 1e-8 && tail * 4.0 <= r0 && within(elapsed, 60.0);
    Ok(Outcome {
        pass,
        detail: format!(
            "shrink bound {}, chain rule {chain:.1e}, Schwarz-Pick max {pick:.3}, r_0 / max tail r = {:.1}, {elapsed:.2?}",
            if shrink { "holds" } else { "fails" },
            r0 / tail
        ),
    })
}

fn cli_runs() -> Vec<Vec<&'static str>> {
    vec![
        vec!["continue", "--germ", "recip_two_minus_z", "--path", "line:0,0:2,0"],
        vec!["continue", "--germ", "recip_two_minus_z", "--path", "line:0,0:0,1"],
        vec!["monodromy", "--germ", "sqrt_at_one", "--loop", "unit-circle", "--turns", "1"],
        vec!["boundary-probe", "--m", "3", "--m-max", "40"],
        vec!["lewy-verify", "--z", "1", "--steps", "8"],
        vec!["laplace-verify"],
        vec!["blaschke-demo", "--pairs", "8"],
    ]
}

fn run_cli(args: &[&str], csv: &PathBuf) -> Option<(Vec<u8>, Vec<u8>)> {
    let out = Command::new(env!("CARGO_BIN_EXE_anacont"))
        .args(args)
        .args(["--seed", "42", "--emit-csv"])
        .arg(csv)
        .output()
        .ok()?;
    if !out.status.success() {
        return None;
    }
    Some((out.stdout, std::fs::read(csv).ok()?))
}

fn determinism() -> anacont::Result<Outcome> {
    let dir = std::env::temp_dir().join(format!("anacont-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| anacont::Error::InvalidInput(e.to_string()))?;
    let mut failures = Vec::new();
    let runs = cli_runs();
    for (i, args) in runs.iter().enumerate() {
        let first = run_cli(args, &dir.join(format!("{i}a.csv")));
        let second = run_cli(args, &dir.join(format!("{i}b.csv")));
        match (first, second) {
            (Some(a), Some(b)) if a == b => {}
            _ => failures.push(args[0]),
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(Outcome {
        pass: failures.is_empty(),
        detail: format!("{} command runs byte-identical; failures: {:?}", runs.len() - failures.len(), failures),
    })
}

fn main() {
    let criteria: [(&str, Check); 10] = [
        ("sqrt monodromy: one loop negates, two loops restore", sqrt_monodromy),
        ("1/(2-z) continued from 0 to i matches the chart at i", two_charts),
        ("radius estimates of the geometric germs", radius_estimates),
        ("lacunary series blows up on all dyadic directions", natural_boundary),
        ("generic continuation stalls near the unit circle", engine_stall),
        ("Lewy loop returns the derivative", lewy_resurgence),
        ("Laplace-Gamma integral solves the functional equation", laplace_solution),
        ("Gamma recurrence and Stirling envelope", gamma_checks),
        ("Blaschke inverse germs have shrinking radii", covering_failure),
        ("CLI reports are byte-identical across runs", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = check().unwrap_or_else(|e| Outcome { pass: false, detail: format!("error: {e}") });
        if !outcome.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {} {name}: {}",
            i + 1,
            if outcome.pass { "PASS" } else { "FAIL" },
            outcome.detail
        );
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
