use std::process::{Command, Output};

use serde_json::Value;

fn cpair(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cpair")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn theorems_on_nilpotent_exit_zero() {
    let o = cpair(&["theorems", "bundled:nilpotent_g6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("Failed"));
}

#[test]
fn associated_on_r6_fails() {
    let o = cpair(&["associated", "bundled:r6_example"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("compatible: Verified"), "{out}");
    assert!(out.contains("associated: Failed"), "{out}");
}

#[test]
fn degenerate_pair_witness() {
    let o = cpair(&["verify-pair", "bundled:degenerate_pair"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("c ≡ 0"));
}

#[test]
fn sample_verified_exits_two() {
    let o = cpair(&["polarize", "bundled:local_model_1_1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn report_json_to_file_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let p = path.to_str().unwrap();
    let args = ["report", "bundled:r6_example", "--out", p, "--samples", "2", "--seed", "11"];
    assert_eq!(cpair(&args).status.code(), Some(1));
    let first = std::fs::read_to_string(&path).unwrap();
    cpair(&args);
    assert_eq!(first, std::fs::read_to_string(&path).unwrap());
    let v: Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["fixture"], "r6_example");
    assert_eq!(v["verdicts"]["associated"]["status"], "Failed");
    assert_eq!(v["verdicts"]["compatible"]["status"], "Verified");
    assert!(v.get("timings").is_none());
}

#[test]
fn report_prints_json() {
    let o = cpair(&["report", "bundled:nilpotent_g6", "--timings"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["timings"].is_object());
}

#[test]
fn fixture_file_on_disk() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pair.json");
    let doc = r#"{
        "id": "plane_pair",
        "backend": "chart",
        "dimension": 2,
        "coordinates": ["x", "y"],
        "alpha1": { "dx": "1" },
        "alpha2": { "dy": "1" },
        "type": [0, 0],
        "sample_points": [["0", "0"]]
    }"#;
    std::fs::write(&path, doc).unwrap();
    let o = cpair(&["reeb", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn input_errors_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"id": "x", "backend": "chart"}"#).unwrap();
    let o = cpair(&["verify-pair", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("schema error"));
    assert_eq!(cpair(&["frobnicate", "bundled:r6_example"]).status.code(), Some(3));
    assert_eq!(cpair(&["verify-pair", "missing.json"]).status.code(), Some(3));
}
