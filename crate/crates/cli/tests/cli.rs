//! End-to-end tests of the `divisor-workbench` binary: exit codes, both
//! report formats, and validation diagnostics.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_divisor-workbench"))
}

fn scenario_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios")
        .join(name)
}

fn write_temp(contents: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().expect("create temp file");
    f.write_all(contents.as_bytes()).expect("write temp file");
    f
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

const PASSING: &str = r#"{
    "schema": "divisor-workbench/1",
    "objects": [{ "kind": "surface", "name": "Q", "builder": "quadric" }],
    "checks": [
        { "op": "pair", "name": "rulings meet once", "surface": "Q",
          "a": { "f1": 1 }, "b": { "f2": 1 }, "expect": 1 }
    ]
}"#;

const FAILING: &str = r#"{
    "schema": "divisor-workbench/1",
    "objects": [{ "kind": "surface", "name": "Q", "builder": "quadric" }],
    "checks": [
        { "op": "pair", "name": "wrong on purpose", "surface": "Q",
          "a": { "f1": 1 }, "b": { "f2": 1 }, "expect": 5 }
    ]
}"#;

#[test]
fn validate_accepts_shipped_scenarios() {
    for name in ["quadric_basics.json", "paper_suite.json"] {
        let out = bin()
            .args(["validate"])
            .arg(scenario_path(name))
            .output()
            .expect("run binary");
        assert!(out.status.success(), "{name}: {}", stderr(&out));
        assert!(stdout(&out).starts_with("ok: "), "{name}: {}", stdout(&out));
    }
}

#[test]
fn validate_rejects_bad_schema_with_exit_2() {
    let file = write_temp(r#"{ "schema": "divisor-workbench/999", "objects": [], "checks": [] }"#);
    let out = bin().arg("validate").arg(file.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("schema"), "{}", stderr(&out));
}

#[test]
fn validate_rejects_dangling_reference_with_exit_2() {
    let file = write_temp(
        r#"{
            "schema": "divisor-workbench/1",
            "objects": [],
            "checks": [
                { "op": "pair", "name": "x", "surface": "missing",
                  "a": { "f1": 1 }, "b": { "f1": 1 }, "expect": 0 }
            ]
        }"#,
    );
    let out = bin().arg("validate").arg(file.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("missing"), "{}", stderr(&out));
}

#[test]
fn run_passing_scenario_exits_0_text() {
    let file = write_temp(PASSING);
    let out = bin().arg("run").arg(file.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("[PASS] #000 rulings meet once (pair)"), "{text}");
    assert!(text.contains("summary: 1 passed, 0 failed, 0 errors, 1 total"), "{text}");
}

#[test]
fn run_failing_scenario_exits_1() {
    let file = write_temp(FAILING);
    let out = bin().arg("run").arg(file.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("[FAIL] #000 wrong on purpose (pair)"), "{text}");
    assert!(text.contains("computed: 1"), "{text}");
    assert!(text.contains("expected: 5"), "{text}");
}

#[test]
fn run_json_format_is_valid_and_deterministic() {
    let file = write_temp(PASSING);
    let run = || {
        bin()
            .args(["run", "--format", "json"])
            .arg(file.path())
            .output()
            .unwrap()
    };
    let first = run();
    assert_eq!(first.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout(&first)).expect("valid JSON");
    assert_eq!(value["schema"], "divisor-workbench-report/1");
    assert_eq!(value["summary"]["pass"], 1);
    let second = run();
    assert_eq!(stdout(&first), stdout(&second), "report output must be byte-stable");
}

#[test]
fn run_unreadable_file_exits_2() {
    let out = bin()
        .args(["run", "/nonexistent/scenario.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("cannot read"), "{}", stderr(&out));
}

#[test]
fn run_malformed_json_exits_2() {
    let file = write_temp("{ not json");
    let out = bin().arg("run").arg(file.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn paper_suite_default_range_passes() {
    let out = bin().arg("paper-suite").output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("0 failed, 0 errors"), "{text}");
}

#[test]
fn paper_suite_narrow_range_json() {
    let out = bin()
        .args(["paper-suite", "--n-min", "5", "--n-max", "5", "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(value["summary"]["fail"], 0);
    assert_eq!(value["summary"]["error"], 0);
}

#[test]
fn paper_suite_rejects_n_below_5() {
    let out = bin()
        .args(["paper-suite", "--n-min", "4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("at least 5"), "{}", stderr(&out));
}
