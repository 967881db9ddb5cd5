use std::f64::consts::{FRAC_PI_4, FRAC_PI_8, PI};

use anacont::lewy::{
    contour_shift_check, lewy_continue, lewy_continue_loop, lewy_derivative_direct, lewy_eval, lewy_eval_fixed,
};
use anacont::{Complex64, Error, QuadratureSpec64};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn quad() -> QuadratureSpec64 {
    QuadratureSpec64::default()
}

#[test]
fn modulus_bound_at_two() {
    let v = lewy_eval(c(2.0, 0.0), 0.0, &quad()).unwrap();
    assert!(v.value.norm() <= 0.5);
    assert!(v.est_error < 1e-10);
    assert!(lewy_derivative_direct(c(2.0, 0.0), &quad()).unwrap().norm() <= 0.25);
}

#[test]
fn rotated_rays_agree_on_the_overlap() {
    let z = Complex64::from_polar(1.0, FRAC_PI_8);
    let a = lewy_eval(z, 0.0, &quad()).unwrap().value;
    let b = lewy_eval(z, FRAC_PI_4, &quad()).unwrap().value;
    assert!((a - b).norm() <= 1e-8, "{a} vs {b}");
}

#[test]
fn node_doubling_converges() {
    let coarse = lewy_eval_fixed(c(1.0, 0.0), 0.0, -40.0, 12.0, 2048).unwrap();
    let fine = lewy_eval_fixed(c(1.0, 0.0), 0.0, -40.0, 12.0, 4096).unwrap();
    assert!((coarse - fine).norm() < 1e-10);
}

#[test]
fn derivative_matches_finite_difference() {
    let h = 1e-5;
    let plus = lewy_eval(c(1.0 + h, 0.0), 0.0, &quad()).unwrap().value;
    let minus = lewy_eval(c(1.0 - h, 0.0), 0.0, &quad()).unwrap().value;
    let fd = (plus - minus) / (2.0 * h);
    let direct = lewy_derivative_direct(c(1.0, 0.0), &quad()).unwrap();
    assert!((fd - direct).norm() <= 1e-5, "{fd} vs {direct}");
}

#[test]
fn derivative_off_axis_is_converged() {
    let q = quad();
    let d = lewy_derivative_direct(c(1.0, 1.0), &q).unwrap();
    let doubled = lewy_derivative_direct(c(1.0, 1.0), &QuadratureSpec64 { nodes: 2 * q.nodes, ..q }).unwrap();
    assert!(d.re.is_finite() && d.im.is_finite());
    assert!((d - doubled).norm() < 1e-8);
}

#[test]
fn sector_violation_is_reported() {
    assert!(matches!(lewy_eval(c(-1.0, 0.0), 0.0, &quad()), Err(Error::SectorViolation { .. })));
    assert!(matches!(lewy_eval(c(1.0, 0.0), PI, &quad()), Err(Error::SectorViolation { .. })));
    assert!(lewy_eval(c(-1.0, 0.0), PI, &quad()).is_ok());
}

#[test]
fn loop_returns_the_derivative() {
    for z in [c(1.0, 0.0), c(1.5, 0.0), c(1.0, 0.2)] {
        let looped = lewy_continue_loop(z, 8, &quad()).unwrap();
        let direct = lewy_derivative_direct(z, &quad()).unwrap();
        let rel = (looped.result.value - direct).norm() / direct.norm();
        assert!(rel <= 1e-6, "z={z}: rel {rel}");
        assert_eq!(looped.overlaps.len(), 8);
        assert!(looped.overlaps.iter().all(|o| o.mismatch <= 1e-7));
    }
}

#[test]
fn loop_is_not_the_identity() {
    let q = quad();
    let looped = lewy_continue_loop(c(1.0, 0.0), 8, &q).unwrap().result.value;
    let start = lewy_eval(c(1.0, 0.0), 0.0, &q).unwrap().value;
    assert!((looped - start).norm() > 1e3 * q.refine_tol);
}

#[test]
fn zero_rotation_is_plain_evaluation() {
    let q = quad();
    let cont = lewy_continue(c(1.0, 0.0), 0.0, 8, &q).unwrap();
    assert!(cont.overlaps.is_empty());
    assert_eq!(cont.result, lewy_eval(c(1.0, 0.0), 0.0, &q).unwrap());
}

#[test]
fn loop_step_refinement() {
    let a = lewy_continue_loop(c(1.0, 0.0), 8, &quad()).unwrap().result.value;
    let b = lewy_continue_loop(c(1.0, 0.0), 16, &quad()).unwrap().result.value;
    assert!((a - b).norm() <= 1e-8);
    assert!(lewy_continue_loop(c(1.0, 0.0), 4, &quad()).is_err());
}

#[test]
fn sector_consistency_on_the_unit_circle() {
    let q = quad();
    let step = 2.0 * PI / 8.0;
    for i in 0..20 {
        let arg = -FRAC_PI_4 + PI / 2.0 * (i as f64 + 0.5) / 20.0;
        let z = Complex64::from_polar(1.0, arg);
        // z lies in the sectors for theta = 0 and theta = step when arg > step - pi/2
        let next = if (z * Complex64::from_polar(1.0, -step)).re > 0.0 { step } else { -step };
        let a = lewy_eval(z, 0.0, &q).unwrap().value;
        let b = lewy_eval(z, next, &q).unwrap().value;
        assert!((a - b).norm() <= 1e-7, "arg {arg}: {}", (a - b).norm());
    }
}

#[test]
fn left_truncation_is_negligible() {
    let q = quad();
    let wide = QuadratureSpec64 { s_min: -60.0, nodes: q.nodes * 2, ..q };
    for z in [c(1.0, 0.0), c(1.0, 0.2)] {
        let a = lewy_eval(z, 0.0, &q).unwrap().value;
        let b = lewy_eval(z, 0.0, &wide).unwrap().value;
        assert!((a - b).norm() < 1e-12, "z={z}: {}", (a - b).norm());
    }
}

#[test]
fn contour_shift_decays() {
    let z = c(1.0, 0.0);
    let ladder: Vec<f64> = [10.0, 20.0, 40.0]
        .iter()
        .map(|&r| contour_shift_check(r, FRAC_PI_4, z).unwrap())
        .collect();
    assert!(ladder.windows(2).all(|w| w[1] < w[0]), "{ladder:?}");
    assert!(ladder[2] < 1e-10);
    assert_eq!(contour_shift_check(40.0, 0.0, z).unwrap(), 0.0);
}

#[test]
fn quadrature_spec_validation() {
    let q = quad();
    assert!(lewy_eval(c(1.0, 0.0), 0.0, &QuadratureSpec64 { nodes: 32, ..q }).is_err());
    assert!(lewy_eval(c(1.0, 0.0), 0.0, &QuadratureSpec64 { s_min: 20.0, ..q }).is_err());
    let starved = QuadratureSpec64 { nodes: 64, max_doublings: 0, refine_tol: 1e-15, ..q };
    assert!(matches!(lewy_eval(c(1.0, 0.0), 0.0, &starved), Err(Error::NoConvergence { .. })));
}
