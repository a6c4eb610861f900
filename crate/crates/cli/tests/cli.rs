//! Behavioral tests of the binary: exit-code contract, validation
//! messages, format handling, scenario-file forms.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn sphlevy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sphlevy")).args(args).output().expect("binary runs")
}

fn write_temp(name: &str, content: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("sphlevy-test-{}-{name}", std::process::id()));
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(content.as_bytes()).unwrap();
    path
}

fn report_of(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

#[test]
fn eval_single_factor_closed_form() {
    let out = sphlevy(&["eval", "--scenario", fixture("eval.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report = report_of(&out);
    assert_eq!(report["result"]["value"], serde_json::json!(0.5));
    assert_eq!(report["status"], "pass");
    assert_eq!(report["scenario"]["tol"], serde_json::json!(1e-8));
    assert_eq!(report["scenario"]["seed"], serde_json::json!(0));
}

#[test]
fn malformed_alpha_exits_2_and_names_the_entry() {
    let path = write_temp(
        "bad-alpha.json",
        r#"{"omega": {"alpha": [1.0, -1.0], "gamma": 0.0}, "xi": {"diag": [1.0]}}"#,
    );
    let out = sphlevy(&["eval", "--scenario", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("alpha[1]"), "stderr was: {stderr}");
}

#[test]
fn unknown_payload_field_exits_2_with_field_message() {
    let path = write_temp(
        "unknown-field.json",
        r#"{"omega": {"alpha": [1.0], "gamma": 0.0, "qamma": 1.0}, "xi": {"diag": [1.0]}}"#,
    );
    let out = sphlevy(&["eval", "--scenario", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("payload"), "stderr was: {stderr}");
}

#[test]
fn failing_negative_type_verdict_exits_1() {
    let path = write_temp(
        "nd-fail.json",
        r#"{"psi": {"quadratic": {"a": -1.0}}, "points": {"random": {"count": 5, "dim": 2}}}"#,
    );
    let out = sphlevy(&["check-nd", "--scenario", path.to_str().unwrap(), "--seed", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let report = report_of(&out);
    assert_eq!(report["status"], "fail");
    assert_eq!(report["result"]["report"]["verdict"], serde_json::json!(false));
}

#[test]
fn run_subcommand_accepts_full_scenario_files() {
    let out = sphlevy(&["run", "--scenario", fixture("lk-forward.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report = report_of(&out);
    assert_eq!(report["scenario"]["kind"], "lk-forward");
    assert_eq!(report["result"]["value"], serde_json::json!(1.5));
}

#[test]
fn kind_mismatch_between_file_and_subcommand_exits_2() {
    let out = sphlevy(&["eval", "--scenario", fixture("check-nd.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("does not match"), "stderr was: {stderr}");
}

#[test]
fn run_rejects_bare_payload_files() {
    let path = write_temp(
        "bare-payload.json",
        r#"{"omega": {"alpha": [1.0], "gamma": 0.0}, "xi": {"diag": [1.0]}}"#,
    );
    let out = sphlevy(&["run", "--scenario", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn csv_requested_for_non_sweep_kind_exits_2() {
    let out = sphlevy(&[
        "eval",
        "--scenario",
        fixture("eval.json").to_str().unwrap(),
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("no CSV form"), "stderr was: {stderr}");
}

#[test]
fn schoenberg_csv_has_grid_columns() {
    let out = sphlevy(&[
        "schoenberg",
        "--scenario",
        fixture("schoenberg.json").to_str().unwrap(),
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,min_eig,verdict"));
    assert_eq!(lines.count(), 3);
}

#[test]
fn haar_test_csv_has_ladder_columns() {
    let out = sphlevy(&[
        "haar-test",
        "--scenario",
        fixture("haar-test.json").to_str().unwrap(),
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("n,mean,stderr,target,abs_dev\n"));
}

#[test]
fn out_flag_writes_the_report_to_disk() {
    let target = std::env::temp_dir()
        .join(format!("sphlevy-test-out-{}.json", std::process::id()));
    let out = sphlevy(&[
        "eval",
        "--scenario",
        fixture("eval.json").to_str().unwrap(),
        "--out",
        target.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(report["result"]["value"], serde_json::json!(0.5));
    std::fs::remove_file(&target).ok();
}

#[test]
fn missing_scenario_file_exits_2() {
    let out = sphlevy(&["eval", "--scenario", "/nonexistent/nowhere.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unwritable_out_path_exits_2() {
    let out = sphlevy(&[
        "eval",
        "--scenario",
        fixture("eval.json").to_str().unwrap(),
        "--out",
        "/nonexistent-dir/report.json",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("io error"), "stderr was: {stderr}");
}

#[test]
fn cli_flags_override_scenario_defaults() {
    let out = sphlevy(&[
        "check-pd",
        "--scenario",
        fixture("check-pd.json").to_str().unwrap(),
        "--tol",
        "1e-6",
        "--seed",
        "99",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = report_of(&out);
    assert_eq!(report["scenario"]["tol"], serde_json::json!(1e-6));
    assert_eq!(report["scenario"]["seed"], serde_json::json!(99));
}

#[test]
fn recover_measure_materializes_default_probes() {
    let out = sphlevy(&[
        "recover-measure",
        "--scenario",
        fixture("recover-measure.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = report_of(&out);
    let probes = report["scenario"]["payload"]["probes"].as_array().unwrap();
    assert_eq!(probes.len(), 14);
    assert_eq!(probes[0], serde_json::json!({"diag": [0.25]}));
}
