use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", self.stdout))
    }
}

fn ria(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ria"));
    cmd.args(args).env_remove("RIA_DEFAULT_BACKEND");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn write(dir: &Path, name: &str, rows: &[&[i64]]) -> String {
    let entries: Vec<[String; 2]> = rows.iter().flat_map(|r| r.iter().map(|x| [x.to_string(), "0".to_string()])).collect();
    let j = serde_json::json!({"rows": rows.len(), "cols": rows[0].len(), "backend": "exact", "entries": entries});
    let p: PathBuf = dir.join(name);
    std::fs::write(&p, j.to_string()).unwrap();
    p.to_str().unwrap().to_string()
}

/// A1 = diag(1, −1), B1 = [1; 0], A2 = B2 = [1].
fn worked(dir: &Path) -> [String; 4] {
    [
        write(dir, "A1.json", &[&[1, 0], &[0, -1]]),
        write(dir, "B1.json", &[&[1], &[0]]),
        write(dir, "A2.json", &[&[1]]),
        write(dir, "B2.json", &[&[1]]),
    ]
}

#[test]
fn inertia_of_diagonal() {
    let d = TempDir::new().unwrap();
    let m = write(d.path(), "D.json", &[&[2, 0, 0], &[0, -3, 0], &[0, 0, 0]]);
    let r = ria(&["inertia", "--matrix", &m], &[]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let j = r.json();
    assert_eq!((j["iplus"].as_u64(), j["iminus"].as_u64(), j["izero"].as_u64()), (Some(1), Some(1), Some(1)));
}

#[test]
fn infeasible_lmi_exits_one_with_certificate() {
    let d = TempDir::new().unwrap();
    let a = write(d.path(), "A.json", &[&[0, 0], &[0, 1]]);
    let b = write(d.path(), "B.json", &[&[1], &[0]]);
    let r = ria(&["lmi", "feasible", "--A", &a, "--B", &b, "--relation", "geq"], &[]);
    assert_eq!(r.code, 1);
    let j = r.json();
    assert_eq!(j["feasible"], Value::Bool(false));
    assert!(j["certificate"].is_object());
}

#[test]
fn extremal_min_rank_of_worked_instance() {
    let d = TempDir::new().unwrap();
    let [a1, b1, ..] = worked(d.path());
    let r = ria(&["extremal", "--A1", &a1, "--B1", &b1, "--objective", "rank", "--sense", "min"], &[]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let j = r.json();
    assert_eq!(j["value"].as_u64(), Some(1));
    assert!(j["ingredients"].is_object());
}

#[test]
fn constrained_extremal_and_loewner() {
    let d = TempDir::new().unwrap();
    let [a1, b1, a2, b2] = worked(d.path());
    let pair = ["--A1", &a1, "--B1", &b1, "--A2", &a2, "--B2", &b2, "--relation", "geq"];
    let r = ria(&[&["extremal"][..], &pair, &["--objective", "iplus", "--sense", "max"]].concat(), &[]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.json()["value"].as_u64(), Some(0));

    let r = ria(&[&["loewner"][..], &pair, &["--sense", "max"]].concat(), &[]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.json()["status"], "bound");

    let r = ria(&[&["loewner"][..], &pair, &["--sense", "min"]].concat(), &[]);
    assert_eq!(r.code, 1);
    assert_eq!(r.json()["status"], "no_bound");
}

#[test]
fn input_errors_exit_two_without_stdout() {
    let d = TempDir::new().unwrap();
    let bad = d.path().join("bad.json");
    std::fs::write(&bad, "{not json").unwrap();
    let r = ria(&["inertia", "--matrix", bad.to_str().unwrap()], &[]);
    assert_eq!(r.code, 2);
    assert!(r.stdout.is_empty());
    assert!(!r.stderr.is_empty());

    let [a1, b1, ..] = worked(d.path());
    let r = ria(&["--backend", "float", "extremal", "--A1", &a1, "--B1", &b1], &[]);
    assert_eq!(r.code, 2);
    assert!(r.stdout.is_empty());

    let r = ria(&["verify", "--count", "1"], &[]);
    assert_eq!(r.code, 2, "verify must require --seed");
    assert!(r.stdout.is_empty());
}

#[test]
fn backend_from_environment() {
    let d = TempDir::new().unwrap();
    let m = write(d.path(), "M.json", &[&[1, 2], &[2, 4]]);
    let r = ria(&["rank", "--matrix", &m], &[("RIA_DEFAULT_BACKEND", "float")]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let j = r.json();
    assert_eq!(j["rank"].as_u64(), Some(1));
    assert_eq!(j["backend"], "float");
}

#[test]
fn verify_generated_and_output_file() {
    let d = TempDir::new().unwrap();
    let out = d.path().join("verdict.json");
    let args = ["verify", "--count", "2", "--samples", "40", "--seed", "7", "--metamorphic", "--output", out.to_str().unwrap()];
    let r = ria(&args, &[]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert_eq!(r.json()["pass"], Value::Bool(true));
    let saved: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(saved, r.json());
    let again = ria(&args, &[]);
    assert_eq!(again.stdout, r.stdout);
}

#[test]
fn verify_fault_injection() {
    let r = ria(&["verify", "--fault-injection", "--seed", "0"], &[]);
    assert_eq!(r.code, 0);
}

#[test]
fn conjecture_search_small_run() {
    let r = ria(&["conjecture35", "--k", "3", "--instances", "20", "--seed", "5"], &[]);
    assert_eq!(r.code, 0);
    let j = r.json();
    assert_eq!(j["common_found"].as_u64(), Some(20));
    assert_eq!(j["candidates"].as_array().map(Vec::len), Some(0));
}

#[test]
fn lmi_solve_and_sample() {
    let d = TempDir::new().unwrap();
    let a = write(d.path(), "A.json", &[&[1, 0], &[0, -1]]);
    let b = write(d.path(), "B.json", &[&[1], &[0]]);
    let r = ria(&["lmi", "solve", "--A", &a, "--B", &b, "--relation", "geq"], &[]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.json()["xhat"].is_object());
    let r = ria(&["lmi", "sample", "--A", &a, "--B", &b, "--relation", "gt", "--samples", "10", "--seed", "3"], &[]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert!(r.json()["realizations"].as_array().is_some_and(|x| !x.is_empty()));
}
