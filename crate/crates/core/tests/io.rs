use anacont::continuation::PathSpec;
use anacont::io::{format_f64, germ_from_json, path_from_json, to_csv, to_json, GermDoc, PathDoc};
use anacont::series::{make_named_germ, Germ, NamedGerm};
use anacont::{Complex64, PathSpec64};
use proptest::prelude::*;

#[test]
fn germ_json_layout() {
    let g = Germ::new(Complex64::new(0.0, 1.0), vec![Complex64::new(0.5, -0.25)], Some(2.0)).unwrap();
    let text = to_json(&GermDoc::from_germ(&g)).unwrap();
    assert_eq!(
        text,
        r#"{"center":[0.0000000000000000e0,1.0000000000000000e0],"coeffs":[[5.0000000000000000e-1,-2.5000000000000000e-1]],"radius_hint":2.0000000000000000e0}"#
    );
    let without_hint = r#"{"center":[0,0],"coeffs":[[1,0]],"radius_hint":null}"#;
    assert_eq!(germ_from_json::<f64>(without_hint).unwrap().radius_hint(), None);
}

#[test]
fn named_germs_round_trip_exactly() {
    for name in NamedGerm::ALL {
        let g = make_named_germ::<f64>(name, 64).unwrap();
        let back: Germ<f64> = germ_from_json(&to_json(&GermDoc::from_germ(&g)).unwrap()).unwrap();
        assert_eq!(back, g);
    }
}

#[test]
fn path_json_layout() {
    let text = r#"{"segments":[{"line":{"from":[0,0],"to":[1,0]}},{"arc":{"center":[0,0],"radius":1,"from_angle":0,"to_angle":3.141592653589793}}]}"#;
    let path: PathSpec64 = path_from_json(text).unwrap();
    assert_eq!(path.segments().len(), 2);
    assert!((path.end() - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
    let again: PathSpec64 = path_from_json(&to_json(&PathDoc::from_path(&path)).unwrap()).unwrap();
    assert_eq!(again, path);
}

#[test]
fn malformed_documents_are_rejected() {
    assert!(germ_from_json::<f64>("{}").is_err());
    assert!(germ_from_json::<f64>(r#"{"center":[0,0],"coeffs":[]}"#).is_err());
    assert!(path_from_json::<f64>(r#"{"segments":[{"line":{"from":[0,0],"to":[1,0]}},{"line":{"from":[2,0],"to":[3,0]}}]}"#).is_err());
}

#[test]
fn unit_circle_document() {
    let doc = PathDoc::from_path(&PathSpec::<f64>::unit_circle(2.0));
    assert!(to_json(&doc).unwrap().starts_with(r#"{"segments":[{"arc":"#));
}

#[test]
fn csv_rows() {
    let text = to_csv(&["a", "b"], &[vec!["1".into(), format_f64(0.5)]]);
    assert_eq!(text, "a,b\n1,5.0000000000000000e-1\n");
}

proptest! {
    #[test]
    fn floats_round_trip(x in any::<f64>().prop_filter("finite", |x| x.is_finite())) {
        let parsed: f64 = format_f64(x).parse().unwrap();
        prop_assert_eq!(parsed.to_bits(), x.to_bits());
        let json: f64 = serde_json::from_str(&to_json(&x).unwrap()).unwrap();
        prop_assert_eq!(json.to_bits(), x.to_bits());
    }
}
