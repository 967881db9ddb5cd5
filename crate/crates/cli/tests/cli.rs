use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use anacont::io::{to_json, GermDoc};
use anacont::series::{make_named_germ, NamedGerm};
use serde_json::Value;

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("anacont-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn anacont(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_anacont")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn csv_rows(path: &Path) -> usize {
    std::fs::read_to_string(path).unwrap().lines().count() - 1
}

type Case = (&'static [&'static str], fn(&Value) -> usize);

fn arr_len(v: &Value) -> usize {
    v.as_array().unwrap().len()
}

#[test]
fn monodromy_example() {
    let out = anacont(&["monodromy", "--germ", "sqrt_at_one", "--loop", "unit-circle", "--turns", "1"]);
    let v = json(&out);
    assert_eq!(v["classification"], "negation");
    let out = anacont(&["monodromy", "--germ", "sqrt_at_one", "--turns", "-2", "--order", "32"]);
    assert_eq!(json(&out)["classification"], "identity");
}

#[test]
fn stall_is_a_finding() {
    let out = anacont(&["continue", "--germ", "recip_two_minus_z", "--path", "line:0,0:2,0"]);
    let v = json(&out);
    assert_eq!(v["status"], "stalled");
    let stall = v["stall_point"].as_array().unwrap();
    assert!((stall[0].as_f64().unwrap() - 2.0).abs() <= 0.15);
}

#[test]
fn lewy_example() {
    let v = json(&anacont(&["lewy-verify", "--z", "1", "--steps", "8"]));
    assert!(v["rel_error"].as_f64().unwrap() <= 1e-6);
    assert_eq!(v["passes"], true);
}

#[test]
fn csv_rows_match_json_arrays() {
    let dir = scratch("csv");
    let cases: [Case; 6] = [
        (&["continue", "--germ", "recip_two_minus_z", "--path", "line:0,0:0,1"], |v| arr_len(&v["step_points"])),
        (&["monodromy", "--germ", "log_at_one"], |v| arr_len(&v["step_points"])),
        (&["boundary-probe", "--m", "2"], |v| {
            v["probes"].as_array().unwrap().iter().map(|p| arr_len(&p["samples"])).sum()
        }),
        (&["lewy-verify", "--z", "1,0.2"], |v| arr_len(&v["sectors"])),
        (&["laplace-verify", "--z", "0", "--z", "0.3,0.1"], |v| arr_len(&v["grid"])),
        (&["blaschke-demo", "--pairs", "3"], |v| arr_len(&v["reports"])),
    ];
    for (i, (args, count)) in cases.iter().enumerate() {
        let csv = dir.join(format!("{i}.csv"));
        let mut full: Vec<&str> = args.to_vec();
        full.extend(["--emit-csv", csv.to_str().unwrap()]);
        let v = json(&anacont(&full));
        assert_eq!(csv_rows(&csv), count(&v), "{}", args[0]);
    }
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn file_inputs_and_output_file() {
    let dir = scratch("files");
    let germ = dir.join("germ.json");
    let path = dir.join("path.json");
    let report = dir.join("report.json");
    let sqrt = make_named_germ::<f64>(NamedGerm::SqrtAtOne, 64).unwrap();
    std::fs::write(&germ, to_json(&GermDoc::from_germ(&sqrt)).unwrap()).unwrap();
    std::fs::write(
        &path,
        r#"{"segments":[{"arc":{"center":[0,0],"radius":1,"from_angle":0,"to_angle":6.283185307179586}}]}"#,
    )
    .unwrap();
    let out = anacont(&[
        "monodromy",
        "--germ-file",
        germ.to_str().unwrap(),
        "--path-file",
        path.to_str().unwrap(),
        "--output",
        report.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["classification"], "negation");
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn tolerance_overrides() {
    let v = json(&anacont(&[
        "continue",
        "--germ",
        "recip_two_minus_z",
        "--path",
        "line:0,0:0,1",
        "--tol",
        "step_fraction=0.2",
    ]));
    assert_eq!(v["status"], "completed");
    let out = anacont(&["continue", "--germ", "recip_two_minus_z", "--path", "line:0,0:0,1", "--tol", "step_fraction=2"]);
    assert_eq!(out.status.code(), Some(1));
    let out = anacont(&["blaschke-demo", "--tol", "refine_tol=1e-9"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn validation_errors_exit_one() {
    for args in [
        vec!["continue", "--germ", "bogus", "--path", "line:0,0:1,0"],
        vec!["continue", "--germ", "sqrt_at_one"],
        vec!["continue", "--germ", "sqrt_at_one", "--path", "line:0,0"],
        vec!["continue", "--germ", "sqrt_at_one", "--path", "line:0,0:1,0"],
        vec!["lewy-verify", "--z", "-1"],
        vec!["laplace-verify", "--z", "0,3"],
        vec!["boundary-probe", "--m", "9"],
        vec!["monodromy", "--germ", "sqrt_at_one", "--turns", "0"],
        vec!["frobnicate"],
    ] {
        assert_eq!(anacont(&args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn numerical_failures_exit_two() {
    // a loop through the pole at 2 cannot close
    let out = anacont(&["monodromy", "--germ", "recip_two_minus_z", "--path", "line:0,0:3,0", "--path", "line:3,0:0,0"]);
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
}
