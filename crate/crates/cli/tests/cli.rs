use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn lcwalk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lcwalk")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn region_validate_ok_and_disconnected() {
    let out = lcwalk(&["region", "validate", "--region", &fixture("staircase.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["points"], 9);
    let out = lcwalk(&["region", "validate", "--region", &fixture("disconnected.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"], "DisconnectedColumns");
}

#[test]
fn exact_solve_two_by_two() {
    let out = lcwalk(&["exact", "solve", "--region", &fixture("two_by_two.json"), "--model", &fixture("uniform_m1.json"), "--start", "0,0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["probabilities"][0]["p"], "4/15");
    assert_eq!(v["probabilities"][1]["p"], "1/15");
    let out = lcwalk(&["--format", "csv", "exact", "solve", "--region", &fixture("single_cell.json"), "--start", "0,0"]);
    assert!(stdout(&out).starts_with("k,p,p_float\n0,1/4,0.25\n"));
}

#[test]
fn exact_solve_rejects_bad_input() {
    let out = lcwalk(&["exact", "solve", "--region", &fixture("disconnected.json"), "--start", "0,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"], "DisconnectedColumns");
    let out = lcwalk(&["exact", "solve", "--region", &fixture("box3.json"), "--model", &fixture("uniform_m1.json"), "--start", "0,0"]);
    assert_eq!(json(&out)["error"], "DimensionMismatch");
    let out = lcwalk(&["exact", "solve", "--region", &fixture("box3.json"), "--start", "1,0"]);
    assert_eq!(json(&out)["error"], "InvalidStart");
    let out = lcwalk(&["exact", "solve", "--region", &fixture("nope.json"), "--start", "0,0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exact_audit_small() {
    let out = lcwalk(&["exact", "audit", "--fixtures", "20", "--rational", "10", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert_eq!(json(&out)["passed"], true);
}

#[test]
fn strip_solve_ladder_and_model() {
    let out = lcwalk(&["--format", "csv", "strip", "solve", "--ladder", "--tol", "1e-10"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let p0: f64 = text.lines().find(|l| l.starts_with("0,")).unwrap().split(',').nth(1).unwrap().parse().unwrap();
    assert!((p0 - 0.4472135955).abs() < 1e-9);
    let out = lcwalk(&["strip", "solve", "--model", &fixture("ladder_model.json"), "--floor", "-3", "--tol", "1e-10"]);
    assert_eq!(out.status.code(), Some(0));
    // Mass below the floor is killed.
    let mass = json(&out)["total_mass"].as_f64().unwrap();
    assert!(mass > 0.5 && mass < 1.0);
    let out = lcwalk(&["strip", "solve", "--ladder", "--tol", "-1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn inject_verify_fixtures() {
    for (r, i) in [("box3.json", "box3_instance.json"), ("staircase.json", "staircase_instance.json"), ("micro.json", "micro_instance.json")] {
        let out = lcwalk(&["inject", "verify", "--region", &fixture(r), "--instance", &fixture(i), "--bound", "8"]);
        assert_eq!(out.status.code(), Some(0), "{r}: {}", stdout(&out));
        let v = json(&out);
        assert_eq!(v["duplicates"], 0);
        assert_eq!(v["inverse_failures"], 0);
    }
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let out = lcwalk(&[
        "inject", "verify", "--region", &fixture("box3.json"), "--instance", &fixture("box3_instance.json"),
        "--bound", "6", "--report", report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn inject_trace_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("trace.svg");
    let out = lcwalk(&[
        "inject", "trace", "--region", &fixture("micro.json"), "--instance", &fixture("micro_instance.json"),
        "--pair", &fixture("micro_pair.json"), "--svg", svg.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["output"]["first"]["steps"], serde_json::json!(["R"]));
    assert_eq!(v["output"]["second"]["steps"], serde_json::json!(["D", "U", "R"]));
    assert_eq!(v["trace"]["fallback_used"], true);
    assert!(std::fs::read_to_string(svg).unwrap().starts_with("<svg"));
    let out = lcwalk(&[
        "inject", "trace", "--region", &fixture("box3.json"), "--instance", &fixture("box3_instance.json"),
        "--pair", &fixture("micro_pair.json"),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn count_dyck_and_schroder() {
    let out = lcwalk(&["--format", "csv", "count", "--mode", "dyck", "--region", &fixture("dyck_n2.json"), "--column", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "k,value,lc_ok\n-2,1,true\n-1,0,true\n0,4,true\n1,0,true\n2,1,true\n");
    let out = lcwalk(&["count", "--mode", "schroder", "--region", &fixture("schroder_n2.json"), "--column", "2"]);
    let v = json(&out);
    // D(1,1)^2 at height 0, D(2,0)^2 at height +-2.
    assert_eq!(v["rows"][2]["value"], "9");
    assert_eq!(v["rows"][0]["value"], "1");
    let out = lcwalk(&["count", "--mode", "dyck", "--region", &fixture("dyck_n2.json"), "--column", "2", "--to", "3,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"], "ParityMismatch");
}

#[test]
fn famous_rows() {
    let out = lcwalk(&["--format", "csv", "famous", "binomial", "--n", "4"]);
    assert_eq!(stdout(&out), "k,value,lc_ok\n0,1,true\n1,4,true\n2,6,true\n3,4,true\n4,1,true\n");
    let out = lcwalk(&["--format", "csv", "famous", "ballot", "--n", "6"]);
    assert!(stdout(&out).contains("\n3,5,true\n"));
    let out = lcwalk(&["famous", "delannoy", "--n", "16"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);
}

#[test]
fn mc_run_and_compare() {
    let dir = tempfile::tempdir().unwrap();
    let sim = dir.path().join("sim.json");
    let args = ["mc", "run", "--region", &fixture("single_cell.json"), "--start", "0,0", "--n", "50000", "--seed", "42"];
    let out = lcwalk(&[&args[..], &["--out", sim.to_str().unwrap()]].concat());
    assert_eq!(out.status.code(), Some(0));
    let first = std::fs::read(&sim).unwrap();
    lcwalk(&[&args[..], &["--out", sim.to_str().unwrap(), "--threads", "1"]].concat());
    assert_eq!(first, std::fs::read(&sim).unwrap());
    let out = lcwalk(&[
        "mc", "compare", "--region", &fixture("single_cell.json"), "--start", "0,0", "--sim", sim.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert_eq!(json(&out)["flagged"], 0);
    // A saved run checked against a different model is flagged.
    let out = lcwalk(&[
        "mc", "compare", "--region", &fixture("single_cell.json"), "--model", &fixture("skewed_m1.json"), "--start", "0,0",
        "--sim", sim.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn output_is_byte_identical() {
    let args = ["--format", "csv", "exact", "solve", "--region", &fixture("box3.json"), "--start", "0,1"];
    assert_eq!(lcwalk(&args).stdout, lcwalk(&args).stdout);
}
