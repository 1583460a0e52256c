use std::process::{Command, Output};

use serde_json::Value;

fn run(cache: &tempfile::TempDir, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_paraclass"))
        .args(args)
        .env("PARACLASS_CACHE", cache.path().join("cache.jsonl"))
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let ok = run(&dir, &["verify", "--example", "d10"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).lines().all(|l| l.starts_with("PASS ")));
    let bad = run(&dir, &["verify", "--example", "nope"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("d10"));
    assert_eq!(
        run(&dir, &["group", "--preset", "bogus", "--op", "fp"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&dir, &["scan", "--max-d", "1"]).status.code(), Some(2));
    assert_eq!(run(&dir, &["frobnicate"]).status.code(), Some(2));
}

#[test]
fn quad_json_is_deterministic_and_cached() {
    let dir = tempfile::tempdir().unwrap();
    let first = run(&dir, &["quad", "--d", "82", "--json"]);
    assert_eq!(first.status.code(), Some(0));
    assert!(dir.path().join("cache.jsonl").exists());
    let second = run(&dir, &["quad", "--d", "82", "--json"]);
    assert_eq!(first.stdout, second.stdout);
    let fresh = tempfile::tempdir().unwrap();
    assert_eq!(
        run(&fresh, &["quad", "--d", "82", "--json"]).stdout,
        first.stdout
    );
    let v: Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(v["report"]["para_class_count"], 4);
    assert_eq!(v["report"]["class_group"]["text"], "Z/4");
}

#[test]
fn scan_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("scan.json");
    let o = run(
        &dir,
        &[
            "scan",
            "--max-d",
            "30",
            "--jobs",
            "2",
            "--out",
            out.to_str().unwrap(),
        ],
    );
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["diff"]["laurent"]["paper_only"], serde_json::json!([23]));
    let again = run(&dir, &["scan", "--max-d", "30", "--jobs", "1"]);
    assert_eq!(stdout(&again), std::fs::read_to_string(&out).unwrap());
}

#[test]
fn group_operations() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &dir,
        &[
            "group",
            "--preset",
            "wreath_zz",
            "--op",
            "hilbert",
            "--depth",
            "5",
        ],
    );
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["ranks"], serde_json::json!([2, 1, 1, 1, 1]));
    let o = run(&dir, &["group", "--preset", "bs12", "--op", "fp"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["finitely_presentable"]["value"], true);
    let o = run(&dir, &["cyclo", "--n", "6"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["residually_nilpotent"], false);
}
