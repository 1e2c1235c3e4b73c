use holoconf::harness::{run_suite, Suite, SuiteConfig};
use std::process::{Command, Output};

fn holoconf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_holoconf"))
        .args(args)
        .env_remove("HOLOCONF_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn table_lists_every_generator() {
    let out = holoconf(&["table", "--realization", "polar"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for g in ["b", "s01", "p0", "p1", "q0", "q1"] {
        assert!(text.lines().any(|l| l.trim_start().starts_with(&format!("{g} ="))), "{text}");
    }
    assert!(text.contains("(r^2 cos(phi)) d/dr"));

    let line = stdout(&holoconf(&["table", "--realization", "upsilon-line"]));
    assert!(line.contains("(u^2) d/du"));
    assert!(!holoconf(&["table", "--realization", "spherical"]).status.success());
}

#[test]
fn grid_writes_csv_with_header() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fibers.csv");
    let out = holoconf(&["grid", "--kind", "hopf-fibers", "--res", "4", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(&path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("xi1,xi2,xi3,lambda,s1,s2,s3,s4"));
    assert!(lines.all(|l| l.split(',').count() == 8));

    let bad = holoconf(&["grid", "--kind", "joukowski", "--res", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(2));
    let missing = dir.path().join("no/such/dir.csv");
    let unwritable = holoconf(&["grid", "--kind", "joukowski", "--res", "3", "--out", missing.to_str().unwrap()]);
    assert_eq!(unwritable.status.code(), Some(2));
}

#[test]
fn suite_filter_and_json_schema() {
    let out = holoconf(&["verify", "--suite", "bicomplex", "--samples", "5"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["status"], "pass");
    let checks = report["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["suite"] == "bicomplex"));
}

#[test]
fn tiny_tolerance_fails_with_defects() {
    let out = holoconf(&["verify", "--suite", "charts", "--tol", "1e-20", "--format", "text"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("FAIL"), "{text}");
    assert!(text.lines().last().unwrap().starts_with("FAIL:"));
}

#[test]
fn bad_configuration_is_rejected() {
    assert_eq!(holoconf(&["verify", "--samples", "0"]).status.code(), Some(2));
    assert_eq!(holoconf(&["verify", "--tol", "-1"]).status.code(), Some(2));
    assert_eq!(holoconf(&["verify", "--suite", "geometry"]).status.code(), Some(2));
}

#[test]
fn seed_falls_back_to_the_environment() {
    let from_env = Command::new(env!("CARGO_BIN_EXE_holoconf"))
        .args(["verify", "--suite", "laplace", "--samples", "3"])
        .env("HOLOCONF_SEED", "11")
        .output()
        .unwrap();
    let report: serde_json::Value = serde_json::from_slice(&from_env.stdout).unwrap();
    assert_eq!(report["seed"], 11);
}

#[test]
fn run_suite_filters_and_reports_defects() {
    let cfg = SuiteConfig {
        suites: vec![Suite::Bicomplex],
        ..SuiteConfig::default()
    };
    let report = run_suite(&cfg);
    assert!(report.passed());
    assert!(report.checks.iter().all(|c| c.suite == Suite::Bicomplex));

    let strict = SuiteConfig {
        tol: 1e-20,
        suites: vec![Suite::Algebra],
        ..SuiteConfig::default()
    };
    let report = run_suite(&strict);
    assert!(!report.passed());
    assert!(report.failed > 0);
    assert!(report
        .checks
        .iter()
        .filter(|c| c.status == holoconf::harness::Status::Fail)
        .all(|c| c.max_defect.is_nan() || c.max_defect > 0.0 || c.detail.is_some()));
}

#[test]
fn default_run_passes_and_is_stable() {
    let a = run_suite(&SuiteConfig::default());
    assert!(a.passed(), "{}", a.to_text());
    assert_eq!(a.failed, 0);
    assert_eq!(a.to_json(), run_suite(&SuiteConfig::default()).to_json());
    let names: Vec<_> = a.checks.iter().map(|c| c.suite).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
}
