use std::process::{Command, Output};

use serde_json::Value;

fn braidrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_braidrep"))
        .args(args)
        .env_remove("BRAIDREP_THREADS")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = braidrep(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn term(e0: i64, e1: i64, c: &str) -> Value {
    serde_json::json!([e0, e1, c])
}

#[test]
fn basis_has_binomial_size() {
    let v = json(&["basis", "--n", "4", "--l", "2"]);
    assert_eq!(v["dim"], 6);
    assert_eq!(v["basis"].as_array().unwrap().len(), 6);
    let v = json(&["basis", "--n", "2", "--l", "0"]);
    assert_eq!(v["dim"], 1);
}

#[test]
fn one_strand_is_a_usage_error() {
    let out = braidrep(&["basis", "--n", "1", "--l", "1"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("--n"));
    assert_eq!(code(&braidrep(&["basis", "--n", "3"])), 2);
    assert_eq!(code(&braidrep(&["matrix", "--n", "3", "--l", "1", "--word", "1 x"])), 2);
    assert_eq!(code(&braidrep(&["matrix", "--n", "3", "--l", "1", "--word", "3"])), 2);
}

#[test]
fn two_strand_weight_two_generator() {
    let v = json(&["matrix", "--n", "2", "--l", "2", "--word", "1"]);
    assert_eq!(v["rows"][0][0]["terms"], serde_json::json!([term(2, -4, "1")]));
}

#[test]
fn empty_word_is_identity() {
    let v = json(&["matrix", "--n", "3", "--l", "2", "--word", ""]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    for (r, row) in rows.iter().enumerate() {
        for (c, x) in row.as_array().unwrap().iter().enumerate() {
            let expected = if r == c {
                serde_json::json!([term(0, 0, "1")])
            } else {
                serde_json::json!([])
            };
            assert_eq!(x["terms"], expected);
        }
    }
}

#[test]
fn braid_relation_on_weight_one() {
    let a = json(&["matrix", "--n", "3", "--l", "1", "--word", "1 2 1"]);
    let b = json(&["matrix", "--n", "3", "--l", "1", "--word", "2 1 2"]);
    assert_eq!(a["rows"], b["rows"]);
    let c = json(&["matrix", "--n", "3", "--l", "1", "--word", "1 2 -1"]);
    assert_ne!(a["rows"], c["rows"]);
}

#[test]
fn check_suites_pass() {
    for (suite, n, l) in [
        ("lkb", "4", "0"),
        ("burau", "5", "1"),
        ("braid", "3", "2"),
        ("yangbaxter", "3", "2"),
        ("equivariance", "3", "2"),
        ("phi", "3", "2"),
        ("splitting", "3", "2"),
        ("eigen", "3", "2"),
        ("twist", "3", "1"),
    ] {
        let out = braidrep(&["check", "--suite", suite, "--n", n, "--l", l]);
        assert_eq!(code(&out), 0, "suite {suite}");
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["pass"], true, "suite {suite}");
    }
}

#[test]
fn perturbed_braiding_fails() {
    let out = braidrep(&["check", "--suite", "braid", "--n", "3", "--l", "2", "--perturb"]);
    assert_eq!(code(&out), 1);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], false);
    assert_eq!(
        code(&braidrep(&["check", "--suite", "lkb", "--n", "3", "--perturb"])),
        2
    );
    assert_eq!(code(&braidrep(&["check", "--suite", "nonsense"])), 2);
}

#[test]
fn irreducible_at_a_point() {
    let v = json(&["irreducible", "--n", "3", "--l", "2", "--q0", "2", "--s0", "3"]);
    assert_eq!(v["commutant_dimension"], 1);
    assert_eq!(v["certified"], true);
    let v = json(&["irreducible", "--n", "2", "--l", "5"]);
    assert_eq!(v["commutant_dimension"], 1);
}

#[test]
fn guard_locus_is_rejected_by_name() {
    let out = braidrep(&["irreducible", "--n", "3", "--l", "2", "--q0", "2", "--s0", "1"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("s^2 - 1"));
    assert_eq!(
        code(&braidrep(&["irreducible", "--n", "3", "--l", "2", "--q0", "2"])),
        2
    );
}

#[test]
fn seeded_point_is_reproducible() {
    let args = ["irreducible", "--n", "3", "--l", "1", "--seed", "11"];
    let a = braidrep(&args);
    let b = braidrep(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn decomposition_verifies() {
    let v = json(&["decompose", "--n", "3", "--l", "2", "--index", "1,0,1"]);
    assert_eq!(v["verified"], true);
    assert_eq!(v["components"].as_array().unwrap().len(), 3);
    let v = json(&["decompose", "--n", "3", "--l", "3", "--seed", "4"]);
    assert_eq!(v["verified"], true);
    assert_eq!(
        code(&braidrep(&["decompose", "--n", "3", "--l", "2", "--index", "1,1"])),
        2
    );
}

#[test]
fn burau_and_lkb_words() {
    let v = json(&["burau", "--n", "3", "--word", "1"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1][0]["terms"], serde_json::json!([term(1, 0, "1")]));
    let v = json(&["burau", "--n", "3", "--word", "1 -1"]);
    assert_eq!(v["rows"][0][1]["terms"], serde_json::json!([]));
    let v = json(&["lkb-matrix", "--n", "4", "--word", "1 2 -1"]);
    assert_eq!(v["basis"].as_array().unwrap().len(), 6);
    let a = json(&["lkb-matrix", "--n", "3", "--word", "1 2 1"]);
    let b = json(&["lkb-matrix", "--n", "3", "--word", "2 1 2"]);
    assert_eq!(a["rows"], b["rows"]);
}

#[test]
fn full_twist_scalar() {
    let v = json(&["twist", "--n", "3", "--l", "1"]);
    assert_eq!(v["scalar"]["terms"], serde_json::json!([term(0, -6, "1")]));
}

#[test]
fn text_format_and_output_file() {
    let out = braidrep(&["matrix", "--n", "2", "--l", "2", "--word", "1", "--format", "text"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("q^2*s^-4"));
    let dir = std::env::temp_dir().join(format!("braidrep-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("m.json");
    let out = braidrep(&[
        "matrix",
        "--n",
        "3",
        "--l",
        "1",
        "--word",
        "1",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(written["basis"].as_array().unwrap().len(), 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    let args = ["check", "--suite", "phi", "--n", "4", "--l", "2"];
    assert_eq!(braidrep(&args).stdout, braidrep(&args).stdout);
}

#[test]
fn thread_cap_is_honoured() {
    let out = Command::new(env!("CARGO_BIN_EXE_braidrep"))
        .args(["check", "--suite", "braid", "--n", "3", "--l", "1"])
        .env("BRAIDREP_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let out = Command::new(env!("CARGO_BIN_EXE_braidrep"))
        .args(["basis", "--n", "3", "--l", "1"])
        .env("BRAIDREP_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}
