//! End-to-end behavior of the `deligne` binary: exit codes, messages,
//! report determinism, and scenario validation.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use deligne_cli::{parse_scenario, ScenarioError};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn deligne(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_deligne"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("deligne-{}-{}", std::process::id(), name));
    fs::write(&path, contents).expect("scratch scenario writes");
    path
}

#[test]
fn annulus_scenario_passes() {
    let out = deligne(&["verify", fixture("annulus.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("PASS"));
    assert!(stdout.contains("oracle = -1/3"));
    assert!(stdout.contains("oracle = -3"));
}

#[test]
fn weil_scenario_passes_exactly() {
    let out = deligne(&["verify", fixture("weil.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("exactly 1"));
}

#[test]
fn inadmissible_scenario_exits_with_validation_error() {
    let out = deligne(&["verify", fixture("inadmissible.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(
        stderr.contains("inadmissible: divisor point 1 inside domain body"),
        "stderr: {stderr}"
    );
}

#[test]
fn failed_expectation_exits_one() {
    let path = scratch(
        "tame-fail.json",
        r#"{
            "functions": {"f": "z", "g": "z"},
            "checks": [{"type": "tame", "f": "f", "g": "g", "at": "0", "expect": "1"}]
        }"#,
    );
    let out = deligne(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("FAIL"));
    assert!(stdout.contains("is -1, expected 1"));
}

#[test]
fn sweep_with_on_contour_fiber_fails_but_reports_all_fibers() {
    let out = deligne(&["verify", fixture("sweep_on_contour.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("2 of 3 fiber(s) pass"));
    assert!(stdout.contains("on boundary circle"));
}

#[test]
fn reports_are_bit_identical_under_a_fixed_seed() {
    let run = |tag: &str| {
        let report = std::env::temp_dir().join(format!(
            "deligne-report-{}-{tag}.json",
            std::process::id()
        ));
        let csv = std::env::temp_dir().join(format!("deligne-csv-{}-{tag}.csv", std::process::id()));
        let out = deligne(&[
            "verify",
            fixture("annulus.json").to_str().unwrap(),
            "--seed",
            "7",
            "--report",
            report.to_str().unwrap(),
            "--csv",
            csv.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        (
            out.stdout,
            fs::read(&report).unwrap(),
            fs::read(&csv).unwrap(),
        )
    };
    let first = run("a");
    let second = run("b");
    assert_eq!(first.0, second.0);
    assert_eq!(first.1, second.1);
    assert_eq!(first.2, second.2);
    let json: serde_json::Value = serde_json::from_slice(&first.1).unwrap();
    assert_eq!(json["seed"], 7);
    assert_eq!(json["pass"], true);
}

#[test]
fn convergence_table_is_nonincreasing_on_the_near_root_annulus() {
    let csv_path = std::env::temp_dir().join(format!("deligne-conv-{}.csv", std::process::id()));
    let out = deligne(&[
        "convergence",
        fixture("annulus_near.json").to_str().unwrap(),
        "--grid",
        "256,1024,4096",
        "--csv",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("monotone refinement: yes"), "{stdout}");
    let csv = fs::read_to_string(&csv_path).unwrap();
    let defects: Vec<f64> = csv
        .lines()
        .skip(1)
        .map(|line| line.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(defects.len(), 3);
    assert!(defects[0] > 1e-12, "coarse defect already at the floor");
    assert!(defects[1] <= defects[0]);
}

#[test]
fn under_sampled_rows_are_recorded_and_the_study_continues() {
    let out = deligne(&[
        "convergence",
        fixture("near_contour.json").to_str().unwrap(),
        "--grid",
        "16,1024,4096",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = stdout.lines().collect();
    assert!(lines[1].starts_with("16"), "{stdout}");
    assert!(lines[1].contains("under-sampled"), "{stdout}");
    assert!(lines[2].starts_with("1024") && !lines[2].contains("under-sampled"));
    assert!(lines[3].starts_with("4096") && !lines[3].contains("under-sampled"));
}

#[test]
fn sweep_csv_labels_rows_with_grid_values() {
    let csv_path = std::env::temp_dir().join(format!("deligne-sweepcsv-{}.csv", std::process::id()));
    let out = deligne(&[
        "verify",
        fixture("sweep.json").to_str().unwrap(),
        "--csv",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let csv = fs::read_to_string(&csv_path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "t,circle,pairing_re,pairing_im,oracle_re,oracle_im,defect"
    );
    let rows: Vec<&str> = lines.collect();
    // 3 fibers x 2 boundary circles
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().any(|r| r.starts_with("0,")));
    assert!(rows.iter().any(|r| r.starts_with("1/4,")));
    assert!(rows.iter().any(|r| r.starts_with("1/2,")));
}

#[test]
fn family_geometry_is_validated_at_every_grid_value() {
    // the hole radius schedule collapses to zero at t = 1/2
    let err = parse_scenario(
        r#"{
            "functions": {"f": "z", "g": "(z-3)"},
            "domain": {
                "outer": {"center": "0", "radius": "2"},
                "holes": [{"center": "0", "radius": "1/2-t"}]
            },
            "family": {"t_grid": ["0", "1/2"], "substitute": true},
            "checks": [{"type": "sweep", "f": "f", "g": "g"}]
        }"#,
    )
    .unwrap_err();
    let message = err.to_string();
    assert!(message.contains("t = 1/2"), "{message}");
    assert!(message.contains("radius"), "{message}");
}

#[test]
fn annulus_scenario_loads_with_expected_shape() {
    let scenario = deligne_cli::load_scenario(&fixture("annulus.json")).unwrap();
    assert_eq!(scenario.functions.len(), 2);
    assert!(scenario.domain.is_some());
    assert_eq!(scenario.checks.len(), 1);
    assert_eq!(scenario.numeric.samples, 4096);
    assert_eq!(scenario.numeric.tol, 1e-8);
}

#[test]
fn convergence_requires_an_eligible_check() {
    let path = scratch(
        "conv-none.json",
        r#"{
            "functions": {"f": "z"},
            "checks": [{"type": "residue_sum", "f": "f"}]
        }"#,
    );
    let out = deligne(&["convergence", path.to_str().unwrap(), "--grid", "256"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn constant_scenarios_converge_to_machine_precision() {
    let path = scratch(
        "conv-const.json",
        r#"{
            "functions": {"f": "2", "g": "3"},
            "domain": {"outer": {"center": "0", "radius": "1"}},
            "checks": [{"type": "deligne", "f": "f", "g": "g"}]
        }"#,
    );
    let out = deligne(&["convergence", path.to_str().unwrap(), "--grid", "64,256"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("monotone refinement: yes"));
}

#[test]
fn scenario_validation_errors() {
    // unknown function reference
    let err = parse_scenario(
        r#"{"functions": {"f": "z"}, "checks": [{"type": "weil", "f": "f", "g": "h"}]}"#,
    )
    .unwrap_err();
    assert!(matches!(err, ScenarioError::UnknownFunction { ref name } if name == "h"));
    assert!(err.to_string().contains("unknown function h"));

    // hole outside the outer circle
    let err = parse_scenario(
        r#"{
            "functions": {"f": "z", "g": "(z-3)"},
            "domain": {
                "outer": {"center": "0", "radius": "1"},
                "holes": [{"center": "5", "radius": "1/2"}]
            },
            "checks": [{"type": "deligne", "f": "f", "g": "g"}]
        }"#,
    )
    .unwrap_err();
    assert!(err.to_string().contains("not strictly inside the outer"));

    // deligne check without a domain
    let err = parse_scenario(
        r#"{"functions": {"f": "z", "g": "z"}, "checks": [{"type": "deligne", "f": "f", "g": "g"}]}"#,
    )
    .unwrap_err();
    assert!(matches!(err, ScenarioError::MissingDomain { check: "deligne" }));

    // sweep without a family
    let err = parse_scenario(
        r#"{
            "functions": {"f": "z", "g": "z"},
            "domain": {"outer": {"center": "0", "radius": "1"}},
            "checks": [{"type": "sweep", "f": "f", "g": "g"}]
        }"#,
    )
    .unwrap_err();
    assert!(matches!(err, ScenarioError::MissingFamily));

    // t-dependent function outside a sweep
    let err = parse_scenario(
        r#"{
            "functions": {"f": "(z-3+t)", "g": "z"},
            "family": {"t_grid": ["0"], "substitute": true},
            "checks": [{"type": "weil", "f": "f", "g": "g"}]
        }"#,
    )
    .unwrap_err();
    assert!(matches!(err, ScenarioError::TDependentFunction { .. }));

    // malformed expression reports the function name
    let err = parse_scenario(
        r#"{"functions": {"f": "z +"}, "checks": [{"type": "residue_sum", "f": "f"}]}"#,
    )
    .unwrap_err();
    assert!(err.to_string().contains("function f"));

    // bad numeric settings
    let err = parse_scenario(
        r#"{
            "functions": {"f": "z"},
            "checks": [{"type": "residue_sum", "f": "f"}],
            "numeric": {"samples": 100}
        }"#,
    )
    .unwrap_err();
    assert!(matches!(err, ScenarioError::InvalidSamples { n: 100 }));

    // geometry literals must be exact rationals, not floats
    let err = parse_scenario(
        r#"{
            "functions": {"f": "z", "g": "(z-3)"},
            "domain": {"outer": {"center": "0", "radius": "2.5"}},
            "checks": [{"type": "deligne", "f": "f", "g": "g"}]
        }"#,
    )
    .unwrap_err();
    assert!(err.to_string().contains("domain.outer.radius"));
}

#[test]
fn missing_file_is_a_validation_error() {
    let out = deligne(&["verify", "/nonexistent/scenario.json"]);
    assert_eq!(out.status.code(), Some(2));
}
