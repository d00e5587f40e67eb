use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_weylkit"))
}

fn scenario(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenarios").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_scenario(task: &str, file: &str) -> Output {
    let path = scenario(file);
    run(&[task, "--scenario", path.to_str().unwrap()])
}

fn inline(task: &str, json: &str) -> Output {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    std::fs::write(&path, json).unwrap();
    run(&[task, "--scenario", path.to_str().unwrap()])
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

#[test]
fn odd_window_vacuum_is_a_point() {
    let out = run(&["padic", "--p", "3", "--k", "1", "--d", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["results"]["vacuum_dim"], 1);
    assert_eq!(r["results"]["heisenberg"], true);
}

#[test]
fn two_window_has_clifford_generators() {
    let out = run_scenario("padic", "window_2_1_1.json");
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert!(r["results"]["clifford_residual_max"].as_f64().unwrap() <= 1e-9);
    assert_eq!(r["results"]["vacuum_dim"], 2);
    assert_eq!(r["seed"], 7);
}

#[test]
fn corrupted_table_fails_with_witness() {
    let out = run_scenario("verify", "corrupted_table.json");
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    let cocycle = r["checks"].as_array().unwrap().iter().find(|c| c["name"] == "cocycle").unwrap();
    assert_eq!(cocycle["pass"], false);
    assert_eq!(cocycle["witness"].as_array().unwrap().len(), 3);
    assert_eq!(run_scenario("verify", "z3_table.json").status.code(), Some(0));
}

#[test]
fn malformed_json_reports_position() {
    let out = inline("verify", "{\n  \"group\": [3],\n  \"multiplier\": \n}");
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("s.json:4:"), "{err}");
}

#[test]
fn unknown_fields_are_rejected() {
    let out = inline("verify", r#"{"group": [3], "multiplier": {"table": []}, "extra": true}"#);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("extra"));
}

#[test]
fn invalid_inputs_exit_two() {
    assert_eq!(run(&["padic", "--p", "4"]).status.code(), Some(2));
    assert_eq!(run(&["verify"]).status.code(), Some(2));
    let non_maximal = r#"{"multiplier": {"symplectic": {"n": 9, "d": 1}}, "subgroups": [[[3, 0]], [[1, 0]]]}"#;
    assert_eq!(inline("svn", non_maximal).status.code(), Some(2));
    let mismatch = r#"{"task": "model", "multiplier": {"symplectic": {"n": 3, "d": 1}}, "subgroup": [[1, 0]]}"#;
    assert_eq!(inline("verify", mismatch).status.code(), Some(2));
    let big = scenario("z9_vacuum.json");
    assert_eq!(run(&["vacuum", "--scenario", big.to_str().unwrap(), "--max-dim", "4"]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let s = scenario("z9_vacuum.json");
    for out in [&a, &b] {
        let o = run(&["vacuum", "--scenario", s.to_str().unwrap(), "--out", out.to_str().unwrap(), "--seed", "11"]);
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
    }
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(x, y);
    let r: Value = serde_json::from_slice(&x).unwrap();
    assert_eq!(r["seed"], 11);
    assert!(r.get("timings").is_none());
}

#[test]
fn stone_von_neumann_on_f2() {
    let out = run_scenario("svn", "f2_svn.json");
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let t = &r["results"]["intertwiner"];
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let entry = |i: usize, j: usize| t[i][j][0].as_f64().unwrap();
    assert!((entry(0, 0) - h).abs() < 1e-9 && (entry(0, 1) - h).abs() < 1e-9);
    assert!((entry(1, 0) - h).abs() < 1e-9 && (entry(1, 1) + h).abs() < 1e-9);
}

#[test]
fn same_subgroup_twice_gives_identity() {
    let out = inline("svn", r#"{"group": [2, 2], "multiplier": {"weyl_product": {"left_rank": 1, "pairing": [["1/2"]]}}, "subgroups": [[[1, 0]], [[1, 0]]]}"#);
    assert_eq!(out.status.code(), Some(0));
    let t = &report(&out)["results"]["intertwiner"];
    assert_eq!(t[0][0][0].as_f64(), Some(1.0));
    assert_eq!(t[0][1][0].as_f64(), Some(0.0));
    assert_eq!(t[1][1][0].as_f64(), Some(1.0));
}

#[test]
fn greedy_second_subgroup() {
    let out = run_scenario("svn", "z9_svn.json");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["results"]["intertwiner_dimension"], 1);
}

#[test]
fn every_task_runs_on_its_example() {
    for (task, file) in [("vacuum", "z9_vacuum.json"), ("isotropy", "z3_isotropy.json"), ("model", "z3_model.json"), ("fermion", "window_2_1_2_fermion.json")] {
        let out = run_scenario(task, file);
        assert_eq!(out.status.code(), Some(0), "{task}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let r = report(&run_scenario("fermion", "window_2_1_2_fermion.json"));
    assert_eq!(r["results"]["d"], 2);
    assert_eq!(r["results"]["v2_order"], 16);
}

#[test]
fn text_format() {
    let s = scenario("z3_model.json");
    let out = run(&["model", "--scenario", s.to_str().unwrap(), "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("task: model"));
    assert!(text.trim_end().ends_with("verdict: PASS"));
    assert!(text.contains("commutant_d: 1"));
}
