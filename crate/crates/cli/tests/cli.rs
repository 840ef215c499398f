use std::path::PathBuf;
use std::process::{Command, Output};

use clap::Parser;
use lhs_cli::report::{RunReport, Status, SCHEMA_VERSION};
use lhs_cli::{run, Cli};

fn configs(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    root.join(name).to_string_lossy().into_owned()
}

fn lhs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lhs")).args(args).output().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

const CASE_F: &str = "(1+s+2*s^2+2*s^3+s^4+s^5)/((1-s^6)*(1-s))";

#[test]
fn extraspecial_pipeline() {
    let (spec, ov) = (configs("extraspecial-27.toml"), configs("extraspecial-27-overrides.toml"));
    let mut reports = Vec::new();
    for k in 0..2 {
        let json = scratch(&format!("case-f-{k}.json"));
        let out = lhs(&[
            "sseq", "--spec", &spec, "--overrides", &ov, "--max-degree", "20", "--expect", CASE_F, "--json",
            json.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        reports.push(std::fs::read_to_string(json).unwrap());
    }
    assert_eq!(reports[0], reports[1]);
    let r: RunReport = serde_json::from_str(&reports[0]).unwrap();
    assert_eq!(r.schema_version, SCHEMA_VERSION);
    let s = r.sseq.unwrap();
    assert_eq!(s.poincare.coefficients[..7], [1, 2, 4, 6, 7, 8, 9]);
    assert_eq!(s.overrides.len(), 2);
    assert!(s.overrides.iter().all(|o| !o.provenance.is_empty()));
}

#[test]
fn a_wrong_expectation_exits_with_one() {
    let out = lhs(&["sseq", "--spec", &configs("extraspecial-27.toml"), "--max-degree", "20", "--expect", CASE_F]);
    // without the overrides d_5 is missing and the series is too large
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("MISMATCH"));
    let out = lhs(&["expand", "1/(1-s)^2", "--terms", "4", "--expect", "1,2,3,5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn three_way_comparison() {
    let out = lhs(&["compare", "--spec", &configs("metacyclic-27.toml"), "--max-degree", "6"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{text}");
    assert_eq!(text.matches("match: ").count(), 3);
}

#[test]
fn verify_suites() {
    let out = lhs(&["verify", "--suite", "cyclic-massey", "--suite", "coboundary", "--seed", "7"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let out = lhs(&["verify", "--suite", "no-such-suite"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("coboundary"));
}

#[test]
fn massey_command() {
    let out = lhs(&["massey", "--p", "3", "--quotient", "1", "y1", "y1", "y1", "--expect", "x1"]);
    assert!(out.status.success());
    let out = lhs(&["massey", "--p", "3", "--quotient", "1,1", "y1", "y2", "y1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("y1*y2"));
}

#[test]
fn bad_specs_name_the_field() {
    let path = scratch("bad.toml");
    std::fs::write(&path, "p = 3\nkernel_m = 1\nquotient = [1, 1]\nxi = \"y1*y2*y3\"\n").unwrap();
    let out = lhs(&["sseq", "--spec", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("xi"));
    std::fs::write(&path, "p = 3\nquotient = [1, 1\n").unwrap();
    let out = lhs(&["sseq", "--spec", path.to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));
}

#[test]
fn reports_round_trip() {
    let cases: Vec<Vec<String>> = vec![
        vec!["oracle".into(), "--spec".into(), configs("c9xc3.toml"), "--max-degree".into(), "4".into()],
        vec!["massey".into(), "--p".into(), "3".into(), "--quotient".into(), "1,1".into(), "x2*y1".into(), "y1".into(), "y1*y2".into()],
        vec!["verify".into(), "--suite".into(), "rank-two-massey".into()],
        vec!["expand".into(), "(1+s)/((1-s)*(1-s^6))".into()],
    ];
    for args in cases {
        let cli = Cli::parse_from(std::iter::once("lhs".to_string()).chain(args.clone()));
        let report = run(&cli).unwrap();
        let back: RunReport = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(back, report, "{args:?}");
        assert!(report.all_pass());
    }
    let cli = Cli::parse_from(["lhs", "expand", "1/(1-s)", "--terms", "2", "--expect", "1,1,2"]);
    let report = run(&cli).unwrap();
    assert!(matches!(report.verdicts[0].status, Status::Mismatch { .. }));
    let back: RunReport = serde_json::from_str(&report.to_json()).unwrap();
    assert_eq!(back, report);
}
