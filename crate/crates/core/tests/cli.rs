use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn catkit(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_catkit"))
        .current_dir(corpus_dir())
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &std::process::Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn copy_dir(from: &Path, to: &Path) {
    std::fs::create_dir_all(to).unwrap();
    for e in std::fs::read_dir(from).unwrap() {
        let e = e.unwrap();
        let target = to.join(e.file_name());
        if e.file_type().unwrap().is_dir() {
            copy_dir(&e.path(), &target);
        } else {
            std::fs::copy(e.path(), target).unwrap();
        }
    }
}

#[test]
fn word_eq_example() {
    let out = catkit(&["present", "word-eq", "--in", "inputs/comm_monoid.json", "--lhs", "abab", "--rhs", "aabb", "--bound", "6"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"], "Equal");
}

#[test]
fn em_check_emits_witness() {
    let out = catkit(&["descent", "em-check", "--in", "inputs/closure_monad.json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["isomorphic"], true);
    assert!(v["witness"].is_object());
}

#[test]
fn validation_failure_exits_2_with_violations() {
    let out = catkit(&["fincat", "validate", "--in", "invalid/broken_chain3.json"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["valid"], false);
    assert!(!v["violations"].as_array().unwrap().is_empty());
}

#[test]
fn rejects_every_negative_control() {
    let verbs: &[(&str, &[&str])] = &[
        ("broken_chain3", &["fincat", "validate"]),
        ("dangling", &["fincat", "validate"]),
        ("malformed_fincat", &["fincat", "validate"]),
        ("wrong_schema", &["fincat", "validate"]),
        ("malformed_computad", &["present", "deficiency"]),
        ("bad_monad", &["descent", "em-check"]),
        ("bad_adjunction", &["mates", "check"]),
    ];
    for (file, verb) in verbs {
        let path = format!("invalid/{file}.json");
        let mut args = verb.to_vec();
        args.extend(["--in", path.as_str()]);
        let out = catkit(&args);
        assert_eq!(out.status.code(), Some(2), "{file} accepted");
        assert!(json(&out).is_object());
    }
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(catkit(&["fincat", "validate"]).status.code(), Some(1));
    assert_eq!(catkit(&["nonsense"]).status.code(), Some(1));
    assert_eq!(catkit(&["fincat", "validate", "--in", "inputs/missing.json"]).status.code(), Some(1));
    assert_eq!(catkit(&["fincat", "validate", "--in", "inputs/chain3.json", "--budget", "x"]).status.code(), Some(1));
    assert_eq!(catkit(&["--help"]).status.code(), Some(0));
}

#[test]
fn budget_env_var_is_honoured() {
    let args = ["fincat", "functor-cat", "--in", "inputs/chain3.json", "--in", "inputs/chain3.json"];
    let ok = catkit(&args);
    assert_eq!(ok.status.code(), Some(0));
    let limited = Command::new(env!("CARGO_BIN_EXE_catkit"))
        .current_dir(corpus_dir())
        .env("CATKIT_BUDGET", "4,64")
        .args(args)
        .output()
        .unwrap();
    assert_eq!(limited.status.code(), Some(2));
    assert_eq!(json(&limited)["error"], "size_limit_exceeded");
}

#[test]
fn out_flag_writes_file() {
    let t = tempfile::tempdir().unwrap();
    let target = t.path().join("chi.json");
    let out = catkit(&["topo", "chi", "--in", "inputs/torus.json", "--out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_slice(&std::fs::read(target).unwrap()).unwrap();
    assert_eq!(v["total"], 0);
}

#[test]
fn repeated_runs_are_identical() {
    let args = ["mates", "random", "--seed", "3", "--count", "20"];
    assert_eq!(catkit(&args).stdout, catkit(&args).stdout);
}

#[test]
fn fresh_corpus_passes() {
    let out = catkit(&["corpus", "run", "--dir", "."]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(json(&out)["pass"], true);
}

#[test]
fn perturbed_golden_fails_only_that_case() {
    let t = tempfile::tempdir().unwrap();
    copy_dir(&corpus_dir(), t.path());
    let golden = t.path().join("golden/topo_chi_components.out");
    let mut bytes = std::fs::read(&golden).unwrap();
    bytes.push(b' ');
    std::fs::write(&golden, bytes).unwrap();
    let out = catkit(&["corpus", "run", "--dir", t.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    let failed: Vec<&str> = v["cases"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pass"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["topo_chi_components"]);
}

#[test]
fn empty_corpus_is_a_usage_error() {
    let t = tempfile::tempdir().unwrap();
    let out = catkit(&["corpus", "run", "--dir", t.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    std::fs::create_dir(t.path().join("cases")).unwrap();
    let out = catkit(&["corpus", "run", "--dir", t.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn in_process_runner_matches_binary() {
    let args = ["catkit", "present", "abelianize", "--in", "inputs/klein.json"];
    let inproc = catkit::cli::run_in(&corpus_dir(), args);
    let bin = catkit(&args[1..]);
    assert_eq!(inproc.stdout, bin.stdout);
    assert_eq!(inproc.code, 0);
}
