use std::process::{Command, Output};

use cocycle_core::cochains::text::to_text;
use cocycle_core::knowncocycles::NamedCocycle;
use cocycle_core::scalar::Scalar;
use cocycle_core::Rational;
use serde_json::Value;

fn engine(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cocycle-engine")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn dims_with_expectation() {
    let args = ["dims", "--algebra", "witt", "--module", "trivial", "--q", "3", "--d", "0", "--n", "8", "--m", "12"];
    let out = engine(&[&args[..], &["--expect", "1"]].concat());
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["result"]["row"]["dimH"], 1);
    assert_eq!(report["config"]["n"], 8);
    assert_eq!(report["config"]["m"], 12);

    let out = engine(&[&args[..], &["--expect", "2"]].concat());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_gv_reports_both_checks() {
    for algebra in ["witt", "virasoro"] {
        let out = engine(&["verify-gv", "--n", "6", "--algebra", algebra]);
        assert_eq!(out.status.code(), Some(0));
        let report = json(&out);
        assert_eq!(report["result"]["cocycle"], true);
        assert_eq!(report["result"]["nontrivial"], true);
    }
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(engine(&["dims", "--frobnicate"]).status.code(), Some(1));
    assert_eq!(engine(&["dims", "--algebra", "sl2"]).status.code(), Some(1));
    assert_eq!(engine(&["scan", "--ladder", "5..3"]).status.code(), Some(1));
    assert_eq!(engine(&["jacobi", "--format", "csv"]).status.code(), Some(1));
    assert_eq!(engine(&["dims", "--n", "4", "--m", "3"]).status.code(), Some(1));
    assert_eq!(engine(&["decompose", "--in", "/nonexistent/cochain.txt"]).status.code(), Some(1));
    assert_eq!(engine(&[]).status.code(), Some(1));
    assert_eq!(engine(&["--help"]).status.code(), Some(0));
}

#[test]
fn decompose_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cocycle.txt");
    let psi = NamedCocycle::GodbillonVeyHat.materialize::<Rational>(9).scale(&Rational::from_frac(5, 2));
    std::fs::write(&path, to_text(&psi)).unwrap();
    let out = engine(&["decompose", "--in", path.to_str().unwrap(), "--n", "9"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = json(&out);
    assert_eq!(report["result"]["lambda"], "5/2");
    assert_eq!(report["result"]["residual_zero"], true);
    assert_eq!(report["result"]["phi"], Value::Array(vec![]));
}

#[test]
fn decompose_rejects_corrupted_cocycle() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cocycle.txt");
    let clean = to_text(&NamedCocycle::GodbillonVey.materialize::<Rational>(9));
    let text = clean.replace("-5 1 4 -> -162/1\n", "-5 1 4 -> 1/1\n");
    assert_ne!(text, clean);
    std::fs::write(&path, text).unwrap();
    let out = engine(&["decompose", "--in", path.to_str().unwrap(), "--n", "9"]);
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(json(&out)["result"]["error"], "NotACocycle");
}

#[test]
fn seeded_runs_are_byte_identical() {
    let args = ["decompose", "--algebra", "virasoro", "--n", "9", "--seed", "42"];
    let a = engine(&args);
    let b = engine(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = engine(&["decompose", "--algebra", "virasoro", "--n", "9", "--seed", "43"]);
    assert_ne!(a.stdout, c.stdout);
    assert_eq!(json(&a)["config"]["seed"], 42);
}

#[test]
fn out_flag_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.csv");
    let out = engine(&["scan", "--q", "2", "--ladder", "3..6", "--format", "csv", "--expect", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# {"));
    assert_eq!(lines.next(), Some("N,M,K,dimZ,dimB,dimH"));
    assert_eq!(lines.count(), 4);
}

#[test]
fn recursion_table_and_jacobi() {
    let out = engine(&["recursion-table", "--n", "7", "--algebra", "virasoro"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["result"]["psi"]["-6 0 6"]["psi_m220"], "-35/1");
    assert_eq!(report["result"]["final_relations"]["coc1"]["psi_m220"], "66/5");
    assert_eq!(engine(&["recursion-table", "--n", "6"]).status.code(), Some(1));

    let out = engine(&["jacobi", "--algebra", "virasoro", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["violations"], 0);
}

#[test]
fn thread_cap_is_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_cocycle-engine"))
        .args(["jacobi", "--n", "3"])
        .env("COCYCLE_ENGINE_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(env!("CARGO_BIN_EXE_cocycle-engine"))
        .args(["jacobi", "--n", "3"])
        .env("COCYCLE_ENGINE_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}
