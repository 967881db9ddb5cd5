use anacont::series::{
    derivative_germ, estimate_radius, eval_germ, eval_germ_unguarded, make_named_germ, Germ, NamedGerm,
};
use anacont::{Complex64, Error, Germ64};
use approx::assert_abs_diff_eq;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn real_germ(coeffs: impl IntoIterator<Item = f64>) -> Germ64 {
    Germ::new(c(0.0, 0.0), coeffs.into_iter().map(|a| c(a, 0.0)).collect(), None).unwrap()
}

#[test]
fn recip_germ_values() {
    let g = make_named_germ::<f64>(NamedGerm::RecipTwoMinusZ, 64).unwrap();
    assert_eq!(eval_germ(&g, c(0.0, 0.0)).unwrap(), c(0.5, 0.0));
    // truncation tail at z = 1 is 2^-65
    let v = eval_germ(&g, c(1.0, 0.0)).unwrap();
    assert_abs_diff_eq!(v.re, 1.0, epsilon = 1e-15);
    assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-15);
}

#[test]
fn zero_series_evaluates_to_zero() {
    let g = real_germ(vec![0.0; 17]);
    assert_eq!(eval_germ(&g, c(0.3, -0.7)).unwrap(), c(0.0, 0.0));
}

#[test]
fn guard_rejects_points_near_the_boundary() {
    let g = make_named_germ::<f64>(NamedGerm::RecipTwoMinusZ, 64).unwrap();
    assert!(matches!(eval_germ(&g, c(1.95, 0.0)), Err(Error::OutOfDisk { .. })));
    assert!(eval_germ_unguarded(&g, c(1.95, 0.0)).is_ok());
}

#[test]
fn polynomial_derivative() {
    let g = real_germ([1.0, 1.0, 1.0]);
    let d = derivative_germ(&g).unwrap();
    assert_eq!(d.coeffs(), &[c(1.0, 0.0), c(2.0, 0.0)]);
    assert_eq!(d.center(), g.center());
    assert!(matches!(derivative_germ(&real_germ([3.0])), Err(Error::DegenerateOrder(..))));
}

#[test]
fn constant_extended_germ_has_zero_derivative() {
    let g = real_germ([2.5, 0.0, 0.0, 0.0]);
    let d = derivative_germ(&g).unwrap();
    assert!(d.coeffs().iter().all(|a| *a == c(0.0, 0.0)));
}

#[test]
fn recip_derivative_matches_square() {
    let g = make_named_germ::<f64>(NamedGerm::RecipTwoMinusZ, 64).unwrap();
    let d = derivative_germ(&g).unwrap();
    for (k, a) in d.coeffs().iter().enumerate() {
        assert_abs_diff_eq!(a.re, (k as f64 + 1.0) / 2f64.powi(k as i32 + 2), epsilon = 1e-18);
    }
    let v = eval_germ(&d, c(0.5, 0.0)).unwrap();
    assert_abs_diff_eq!(v.re, 1.0 / (1.5f64 * 1.5), epsilon = 1e-12);
}

#[test]
fn radius_of_geometric_germs() {
    let at_zero = make_named_germ::<f64>(NamedGerm::RecipTwoMinusZ, 64).unwrap();
    let r = estimate_radius(&at_zero).unwrap().value;
    assert!((1.9..=2.1).contains(&r), "{r}");
    let at_i = make_named_germ::<f64>(NamedGerm::RecipTwoMinusZAtI, 64).unwrap();
    let r = estimate_radius(&at_i).unwrap().value;
    let s5 = 5f64.sqrt();
    assert!((0.95 * s5..=1.05 * s5).contains(&r), "{r}");
    let ones = real_germ(vec![1.0; 65]);
    let r = estimate_radius(&ones).unwrap().value;
    assert!((0.95..=1.05).contains(&r), "{r}");
}

#[test]
fn radius_of_entire_germ_is_huge() {
    let mut fact = 1.0;
    let coeffs: Vec<f64> = (0..=64)
        .map(|k| {
            if k > 0 {
                fact *= k as f64;
            }
            1.0 / fact
        })
        .collect();
    let est = estimate_radius(&real_germ(coeffs)).unwrap();
    assert!(est.is_infinite() || est.value > 1e3, "{:?}", est);
}

#[test]
fn radius_needs_order_eight() {
    let g = real_germ(vec![1.0; 8]);
    assert!(matches!(estimate_radius(&g), Err(Error::InsufficientOrder { .. })));
}

#[test]
fn radius_confidence_is_a_fraction() {
    for name in NamedGerm::ALL {
        let g = make_named_germ::<f64>(name, 64).unwrap();
        let est = estimate_radius(&g).unwrap();
        assert!(est.value > 0.0);
        assert!((0.0..=1.0).contains(&est.confidence), "{name}: {:?}", est);
    }
}

#[test]
fn named_germ_leading_coefficients() {
    let g = make_named_germ::<f64>(NamedGerm::RecipTwoMinusZ, 16).unwrap();
    assert_eq!(g.coeffs()[3], c(1.0 / 16.0, 0.0));
    assert_eq!(g.order(), 16);
    let g = make_named_germ::<f64>(NamedGerm::SqrtAtOne, 16).unwrap();
    assert_eq!(g.coeffs()[0], c(1.0, 0.0));
    assert_eq!(g.coeffs()[1], c(0.5, 0.0));
    let g = make_named_germ::<f64>(NamedGerm::RecipTwoMinusZAtI, 16).unwrap();
    assert_eq!(g.center(), c(0.0, 1.0));
    let expect = c(1.0, 0.0) / c(2.0, -1.0);
    assert!((g.coeffs()[0] - expect).norm() < 1e-16);
    let g = make_named_germ::<f64>(NamedGerm::Lacunary, 16).unwrap();
    let nonzero: Vec<usize> = (0..=16).filter(|&k| g.coeffs()[k] != c(0.0, 0.0)).collect();
    assert_eq!(nonzero, vec![0, 2, 4, 8, 16]);
    let g = make_named_germ::<f64>(NamedGerm::LogAtOne, 16).unwrap();
    assert_eq!(g.coeffs()[0], c(0.0, 0.0));
    assert_eq!(g.coeffs()[3], c(1.0 / 3.0, 0.0));
}

#[test]
fn named_germ_names_round_trip() {
    for name in NamedGerm::ALL {
        assert_eq!(name.to_string().parse::<NamedGerm>().unwrap(), name);
    }
    assert!("cosine".parse::<NamedGerm>().is_err());
    assert!(make_named_germ::<f64>(NamedGerm::SqrtAtOne, 4).is_err());
}

#[test]
fn germ_validation() {
    assert!(Germ::<f64>::new(c(0.0, 0.0), vec![], None).is_err());
    assert!(Germ::new(c(0.0, 0.0), vec![c(1.0, 0.0)], Some(0.0)).is_err());
    assert!(Germ::new(c(0.0, 0.0), vec![c(f64::NAN, 0.0)], None).is_err());
    assert!(Germ::new(c(0.0, 0.0), vec![c(1.0, 0.0)], Some(2.0)).is_ok());
}

#[test]
fn single_precision_evaluation() {
    let g = make_named_germ::<f32>(NamedGerm::RecipTwoMinusZ, 32).unwrap();
    let v = eval_germ(&g, anacont::Complex::new(0.5f32, 0.0)).unwrap();
    assert!((v.re - 1.0 / 1.5).abs() < 1e-6);
}

fn named_point(name: NamedGerm, t: f64, angle: f64) -> (Germ64, Complex64) {
    let g = make_named_germ::<f64>(name, 64).unwrap();
    let reach = match name {
        NamedGerm::Lacunary | NamedGerm::SqrtAtOne | NamedGerm::LogAtOne => 0.5,
        _ => 1.0,
    };
    let z = g.center() + Complex64::from_polar(reach * t, angle);
    (g, z)
}

proptest! {
    #[test]
    fn derivative_agrees_with_finite_difference(
        idx in 0usize..5, t in 0.0f64..1.0, angle in 0.0f64..std::f64::consts::TAU,
    ) {
        let (g, z) = named_point(NamedGerm::ALL[idx], t, angle);
        let d = derivative_germ(&g).unwrap();
        let h = 1e-5;
        let fd = (eval_germ(&g, z + h).unwrap() - eval_germ(&g, z - h).unwrap()) / (2.0 * h);
        let exact = eval_germ(&d, z).unwrap();
        prop_assert!((fd - exact).norm() <= 1e-6, "{} vs {}", fd, exact);
    }

    #[test]
    fn radius_scales_inversely(idx in 0usize..5) {
        let g = make_named_germ::<f64>(NamedGerm::ALL[idx], 64).unwrap();
        let scaled = Germ::new(
            g.center(),
            g.coeffs().iter().enumerate().map(|(k, a)| a * 2f64.powi(k as i32)).collect(),
            None,
        ).unwrap();
        let r = estimate_radius(&g).unwrap().value;
        let rs = estimate_radius(&scaled).unwrap().value;
        prop_assert!((rs * 2.0 / r - 1.0).abs() <= 0.05, "{} vs {}", r, rs);
    }

    #[test]
    fn evaluation_is_deterministic(idx in 0usize..5, t in 0.0f64..1.0, angle in 0.0f64..std::f64::consts::TAU) {
        let (g, z) = named_point(NamedGerm::ALL[idx], t, angle);
        let a = eval_germ(&g, z).unwrap();
        let b = eval_germ(&g, z).unwrap();
        prop_assert_eq!(a.re.to_bits(), b.re.to_bits());
        prop_assert_eq!(a.im.to_bits(), b.im.to_bits());
    }

    #[test]
    fn recip_germ_matches_closed_form(t in 0.0f64..0.9, angle in 0.0f64..std::f64::consts::TAU) {
        let g = make_named_germ::<f64>(NamedGerm::RecipTwoMinusZ, 64).unwrap();
        let z = Complex64::from_polar(1.5 * t, angle);
        let v = eval_germ(&g, z).unwrap();
        prop_assert!((v - 1.0 / (2.0 - z)).norm() <= 1e-6);
    }
}
