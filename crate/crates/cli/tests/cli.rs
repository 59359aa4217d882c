use std::process::{Command, Output};

use serde_json::Value;

fn pillai(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pillai"))
        .args(args)
        .env_remove("PILLAI_PRECISION")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn check_reduced_case() {
    let o = pillai(&["check", "--p", "11", "--n", "9"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("EliminatedByReduction"));
}

#[test]
fn check_rejects_bad_prime() {
    let o = pillai(&["check", "--p", "13", "--n", "1"]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).is_empty());
}

#[test]
fn check_even_n() {
    let o = pillai(&["check", "--p", "7", "--n", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("EliminatedByLemma"));
}

#[test]
fn check_json_roundtrips() {
    let o = pillai(&["--json", "check", "--p", "11", "--n", "9"]);
    assert_eq!(code(&o), 0);
    let v: pillai_core::reduction::CaseVerdict = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.status, pillai_core::reduction::Status::EliminatedByReduction);
    assert_eq!((v.p, v.n), (11, 9));
}

#[test]
fn bounds_output() {
    let o = pillai(&["bounds", "--p", "11", "--n", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("y_upper: 6045"));
    let o = pillai(&["--json", "bounds", "--p", "11", "--n", "1"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["bounds"]["y_upper"], 6045);
    let o = pillai(&["bounds", "--p", "4", "--n", "1"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn oracle_box() {
    let o = pillai(&["--json", "oracle", "--p", "7", "--n", "3", "--max", "10"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["solutions"], serde_json::json!([{ "x": 1, "y": 1, "z": 2 }]));
    assert_eq!(code(&pillai(&["oracle", "--p", "7", "--n", "3", "--max", "1"])), 2);
}

#[test]
fn sweeps() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("theorem.jsonl");
    let o = pillai(&["sweep-theorem", "--smoke", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let lines = std::fs::read_to_string(&out).unwrap();
    assert!(lines.lines().count() > 0);
    for l in lines.lines() {
        let r: pillai_core::campaign::CaseRecord = serde_json::from_str(l).unwrap();
        assert!(r.status.is_eliminated());
    }

    let o = pillai(&["--json", "sweep-corollary", "--n-max", "100"]);
    assert_eq!(code(&o), 0);
    let r: pillai_core::campaign::SweepReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(r.succeeded());
    assert_eq!(r.cases_planned, 20);

    assert_eq!(code(&pillai(&["sweep-theorem", "--p-max", "0"])), 2);
    assert_eq!(code(&pillai(&["sweep-theorem", "--p-max", "20000"])), 2);
    assert_eq!(code(&pillai(&["sweep-corollary", "--smoke", "--checkpoint", "x.json"])), 2);
}

#[test]
fn sweep_resume_via_flags() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.jsonl");
    let cp = dir.path().join("cp.json");
    let (out, cp) = (out.to_str().unwrap(), cp.to_str().unwrap());
    let base = ["sweep-theorem", "--smoke", "--no-timings", "--out", out, "--checkpoint", cp];
    let mut first = base.to_vec();
    first.extend(["--stop-after", "64"]);
    assert_eq!(code(&pillai(&first)), 0);
    let partial = std::fs::read_to_string(out).unwrap().lines().count();
    assert_eq!(partial, 64);
    assert_eq!(code(&pillai(&base)), 0);
    let resumed = std::fs::read_to_string(out).unwrap();

    let fresh = dir.path().join("f.jsonl");
    let o = pillai(&["sweep-theorem", "--smoke", "--no-timings", "--out", fresh.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(resumed, std::fs::read_to_string(&fresh).unwrap());

    let mut changed = base.to_vec();
    changed.extend(["--p-max", "50"]);
    assert_eq!(code(&pillai(&changed)), 2);
}

#[test]
fn precision_env_and_flag() {
    let o = Command::new(env!("CARGO_BIN_EXE_pillai"))
        .args(["check", "--p", "11", "--n", "9"])
        .env("PILLAI_PRECISION", "8")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    let o = pillai(&["--precision", "256", "--json", "check", "--p", "11", "--n", "9"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["precision_bits"].as_u64().unwrap() >= 256);
}
