use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn specturan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_specturan")).args(args).env_remove("SPECTURAN_CEILING").output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn gen(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", path.to_str().unwrap()]);
    let out = specturan(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn gen_writes_the_blowup() {
    let out = specturan(&["gen", "--kind", "c5-blowup", "--n", "10"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let h = specturan::formats::parse_hgr(&text).unwrap();
    assert_eq!((h.n(), h.r(), h.edge_count()), (10, 2, 20));
}

#[test]
fn count_pentagons_in_k5() {
    let dir = TempDir::new().unwrap();
    let q = gen(dir.path(), "q.hgr", &["--kind", "cycle", "--n", "5"]);
    let h = gen(dir.path(), "h.hgr", &["--kind", "complete", "--n", "5"]);
    let out = specturan(&["count", "--q", q.to_str().unwrap(), "--h", h.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.lines().any(|l| l == "copies 12"), "{text}");
    assert!(text.lines().any(|l| l == "aut_order 10"), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("qdegree ")).count(), 5);
}

#[test]
fn verify_pentagon_reports_json() {
    let out = specturan(&["verify", "pentagon", "--n", "9", "--p", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["passed"], true);
    assert!(!report["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn failed_verification_carries_a_witness() {
    let dir = TempDir::new().unwrap();
    let q = gen(dir.path(), "q.hgr", &["--kind", "cycle", "--n", "5"]);
    let h = gen(dir.path(), "h.hgr", &["--kind", "c5-blowup", "--n", "10"]);
    let out = specturan(&[
        "verify", "flat", "--q", q.to_str().unwrap(), "--h", h.to_str().unwrap(), "--pi", "1/100", "--p", "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["passed"], false);
    let witnesses = report["witnesses"].as_array().unwrap();
    let violation = witnesses.iter().find(|w| w["role"] == "violation").unwrap();
    let hgr = violation["hgr"].as_str().unwrap();
    let g = specturan::formats::parse_hgr(hgr).unwrap();
    assert_eq!((g.n(), g.edge_count()), (10, 20));
}

#[test]
fn usage_and_input_errors_exit_two() {
    assert_eq!(specturan(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(specturan(&["verify", "pentagon", "--n", "6", "--p", "0.5"]).status.code(), Some(2));
    let out = specturan(&["count", "--q", "/nonexistent/q.hgr", "--h", "/nonexistent/h.hgr"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.hgr");
    std::fs::write(&bad, "3 2 1\n0 7\n").unwrap();
    let out = specturan(&["count", "--q", bad.to_str().unwrap(), "--h", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ceiling_from_flag_and_environment() {
    let out = specturan(&["--ceiling", "5", "enumerate", "--n", "6"]);
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_specturan"))
        .args(["enumerate", "--n", "6"])
        .env("SPECTURAN_CEILING", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_specturan"))
        .args(["--ceiling", "6", "enumerate", "--n", "6"])
        .env("SPECTURAN_CEILING", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

fn records(text: &str) -> Vec<String> {
    text.lines().filter(|l| l.starts_with("# label ")).map(str::to_string).collect()
}

fn token(text: &str) -> String {
    text.lines().find_map(|l| l.strip_prefix("# checkpoint ")).unwrap().to_string()
}

#[test]
fn enumerate_resumes_from_a_checkpoint() {
    let dir = TempDir::new().unwrap();
    let tri = gen(dir.path(), "k3.hgr", &["--kind", "complete", "--n", "3"]);
    let tri = tri.to_str().unwrap();
    let full = stdout(&specturan(&["enumerate", "--n", "7", "--forbid", tri]));
    let all = records(&full);
    assert_eq!(all.len(), 107);
    let head = stdout(&specturan(&["enumerate", "--n", "7", "--forbid", tri, "--limit", "20"]));
    let t = token(&head);
    let tail = stdout(&specturan(&["enumerate", "--n", "7", "--forbid", tri, "--checkpoint", &t]));
    let mut joined = records(&head);
    joined.extend(records(&tail));
    assert_eq!(joined, all);
    let records = specturan::formats::parse_hgr_records(
        &full.lines().filter(|l| !l.starts_with('#')).collect::<Vec<_>>().join("\n"),
    )
    .unwrap();
    assert_eq!(records.len(), 107);
}

#[test]
fn outputs_are_byte_stable() {
    let dir = TempDir::new().unwrap();
    let q = gen(dir.path(), "q.hgr", &["--kind", "cycle", "--n", "5"]);
    let h = gen(dir.path(), "h.hgr", &["--kind", "c5-blowup", "--n", "8"]);
    let again = gen(dir.path(), "h2.hgr", &["--kind", "c5-blowup", "--n", "8"]);
    assert_eq!(std::fs::read(&h).unwrap(), std::fs::read(&again).unwrap());
    let (q, h) = (q.to_str().unwrap(), h.to_str().unwrap());
    for args in [
        vec!["--seed", "3", "count", "--q", q, "--h", h],
        vec!["--seed", "3", "specrad", "--q", q, "--h", h, "--p", "3"],
        vec!["--seed", "3", "sweep", "--q", q, "--h", h, "--p-list", "1,2,4"],
        vec!["--seed", "3", "density", "--q", q, "--n-min", "5", "--n-max", "6"],
    ] {
        let a = specturan(&args);
        let b = specturan(&args);
        assert!(a.status.success(), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn derive_then_specrad_on_the_file() {
    let dir = TempDir::new().unwrap();
    let q = gen(dir.path(), "q.hgr", &["--kind", "cycle", "--n", "5"]);
    let h = gen(dir.path(), "h.hgr", &["--kind", "c5-blowup", "--n", "10"]);
    let d = dir.path().join("d.w");
    let out = specturan(&["derive", "--q", q.to_str().unwrap(), "--h", h.to_str().unwrap(), "--out", d.to_str().unwrap()]);
    assert!(out.status.success());
    let w = specturan::formats::parse_weighted(&std::fs::read_to_string(&d).unwrap()).unwrap();
    assert_eq!((w.n(), w.s(), w.total_weight()), (10, 5, 32));
    let from_file: serde_json::Value =
        serde_json::from_slice(&specturan(&["specrad", "--weighted", d.to_str().unwrap(), "--p", "1"]).stdout).unwrap();
    let lambda = from_file["lambda"].as_f64().unwrap();
    assert!((lambda - 120.0 / 3125.0).abs() < 1e-9, "{lambda}");
}

#[test]
fn blowup_and_monotone_verbs() {
    let dir = TempDir::new().unwrap();
    let q = gen(dir.path(), "q.hgr", &["--kind", "cycle", "--n", "5"]);
    let q = q.to_str().unwrap();
    let out = specturan(&["verify", "blowup", "--q", q, "--h", q, "--sizes", "2,2,2,2,2", "--format", "csv"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "left,right\n3840,3840\n");
    let tri = gen(dir.path(), "k3.hgr", &["--kind", "complete", "--n", "3"]);
    let out = specturan(&[
        "verify", "monotone", "--q", q, "--forbid", tri.to_str().unwrap(), "--n-min", "5", "--n-max", "7", "--p", "2",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}
