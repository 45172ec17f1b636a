//! Golden reports for every subcommand, pinned to the corpus symbols.
//!
//! Set `UPDATE_GOLDEN=1` to rewrite the files after an intentional change.

use std::path::{Path, PathBuf};

use assert_cmd::Command;
use serde_json::Value;

fn dir(sub: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join(sub)
}

fn corpus(name: &str) -> String {
    dir("corpus").join(format!("{name}.json")).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::cargo_bin("toeplitz-lab").unwrap().env_remove("TOEPLITZ_LAB_TOL").args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

/// Structural equality with a small numeric slack; the byte-level contract
/// is covered separately by the determinism test.
fn same(a: &Value, b: &Value) -> bool {
    match (a, b) {
        (Value::Number(x), Value::Number(y)) => {
            let (x, y) = (x.as_f64().unwrap(), y.as_f64().unwrap());
            (x - y).abs() <= 1e-9 * (1.0 + x.abs().max(y.abs()))
        }
        (Value::Array(x), Value::Array(y)) => x.len() == y.len() && x.iter().zip(y).all(|(p, q)| same(p, q)),
        (Value::Object(x), Value::Object(y)) => {
            x.len() == y.len() && x.iter().zip(y).all(|((kx, vx), (ky, vy))| kx == ky && same(vx, vy))
        }
        _ => a == b,
    }
}

fn golden(name: &str, args: &[&str]) {
    let (code, stdout, stderr) = run(args);
    assert_eq!(code, 0, "{name}: {stderr}");
    let got: Value = serde_json::from_str(&stdout).unwrap();
    if let Some(exp) = got["body"].get("expectations") {
        assert_eq!(exp["mismatches"], Value::Array(vec![]), "{name}: expectations not met\n{stdout}");
    }
    let path = dir("golden").join(format!("{name}.json"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() || !path.exists() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &stdout).unwrap();
    }
    let want: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(same(&got, &want), "{name}: report differs from {}\n{stdout}", path.display());
}

#[test]
fn check_normal() {
    golden("check_normal_normal_form", &["check-normal", "--symbol", &corpus("normal_form")]);
    golden("check_normal_coupled", &["check-normal", "--symbol", &corpus("coupled_z"), "--section", "24"]);
}

#[test]
fn check_hyponormal() {
    golden("check_hyponormal_zbar_plus_2z", &["check-hyponormal", "--symbol", &corpus("zbar_plus_2z")]);
    golden("check_hyponormal_zbar_plus_half_z", &["check-hyponormal", "--symbol", &corpus("zbar_plus_half_z")]);
    golden("check_hyponormal_zbar2_plus_z", &["check-hyponormal", "--symbol", &corpus("zbar2_plus_z")]);
}

#[test]
fn certify_witness() {
    golden("certify_witness_coupled", &["certify-witness", "--symbol", &corpus("coupled_z")]);
    golden("certify_witness_normal_form", &["certify-witness", "--symbol", &corpus("normal_form")]);
    golden("certify_witness_search", &["certify-witness", "--symbol", &corpus("zbar_plus_2z")]);
    golden("certify_witness_search_empty", &["certify-witness", "--symbol", &corpus("zbar_plus_half_z")]);
}

#[test]
fn classify() {
    golden("classify_polynomial", &["classify", "--symbol", &corpus("polynomial")]);
    golden("classify_normal_form", &["classify", "--symbol", &corpus("normal_form"), "--section", "32"]);
    golden("classify_coupled", &["classify", "--symbol", &corpus("coupled_z"), "--section", "32"]);
    golden("classify_zbar2_plus_z", &["classify", "--symbol", &corpus("zbar2_plus_z")]);
}

#[test]
fn coupled_family() {
    golden("coupled_family_z", &["remark311", "--theta", r#"{"zeros":[{"alpha":[0,0],"mult":1}]}"#]);
    golden(
        "coupled_family_b_half",
        &["remark311", "--theta", r#"{"zeros":[{"alpha":[0.5,0],"mult":1}]}"#, "--section", "24"],
    );
}

#[test]
fn kronecker_rank() {
    golden("kronecker_rank_geometric", &["kronecker-rank", "--symbol", &corpus("geometric")]);
    golden("kronecker_rank_zbar2_plus_z", &["kronecker-rank", "--symbol", &corpus("zbar2_plus_z")]);
    golden("kronecker_rank_polynomial", &["kronecker-rank", "--symbol", &corpus("polynomial")]);
}

#[test]
fn cowen_long() {
    golden("cowen_long_half", &["cowen-long", "--alpha", "0.5", "--k", "8"]);
}

#[test]
fn coprimality() {
    golden("coprimality_ones", &["lemma312", "--symbol", &corpus("ones_zbar")]);
    golden("coprimality_coupled", &["lemma312", "--symbol", &corpus("coupled_z")]);
}

#[test]
fn text_format() {
    let (code, stdout, _) = run(&["cowen-long", "--alpha", "0.5", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("# toeplitz-lab"));
    assert!(stdout.contains("verdict = \"subnormal_consistent\""));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for args in [
        vec!["classify".to_string(), "--symbol".into(), corpus("coupled_z")],
        vec!["certify-witness".to_string(), "--symbol".into(), corpus("zbar_plus_2z")],
    ] {
        let a: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(run(&a).1, run(&a).1);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["no-such-command"]).0, 1);
    assert_eq!(run(&["classify"]).0, 1);
    assert_eq!(run(&["classify", "--symbol", "/nonexistent.json"]).0, 1);
    assert_eq!(run(&["cowen-long", "--alpha", "1.2"]).0, 1);
    assert_eq!(run(&["cowen-long", "--alpha", "0.5", "--k", "0"]).0, 1);
    assert_eq!(run(&["certify-witness", "--symbol", &corpus("ones_zbar")]).0, 1);
    // an explicit theta requires an analytic B
    assert_eq!(run(&["lemma312", "--symbol", &corpus("ones_zbar"), "--theta", r#"{"zeros":[{"alpha":[0,0],"mult":1}]}"#]).0, 1);
    assert_eq!(run(&["--help"]).0, 0);

    let tmp = tempfile::tempdir().unwrap();
    let bad = tmp.path().join("bad.json");
    std::fs::write(&bad, r#"{"schema_version":1,"symbol":{"n":2,"entries":[[]]}}"#).unwrap();
    let (code, stdout, stderr) = run(&["classify", "--symbol", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(stdout.is_empty());
    assert!(stderr.contains("schema violation"), "{stderr}");

    let out = Command::cargo_bin("toeplitz-lab")
        .unwrap()
        .env("TOEPLITZ_LAB_TOL", "-1")
        .args(["cowen-long", "--alpha", "0.5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn tolerance_override_is_reported() {
    let out = Command::cargo_bin("toeplitz-lab")
        .unwrap()
        .env("TOEPLITZ_LAB_TOL", "1e-6")
        .args(["check-hyponormal", "--symbol", &corpus("zbar_plus_2z")])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["header"]["tol"], serde_json::json!(1e-6));
    assert_eq!(v["body"]["tolerance"], serde_json::json!(1e-6));
}

#[test]
fn mismatched_expectations_keep_exit_zero() {
    let tmp = tempfile::tempdir().unwrap();
    let mut file: Value = serde_json::from_str(&std::fs::read_to_string(corpus("zbar_plus_half_z")).unwrap()).unwrap();
    file["expected"]["check-hyponormal"]["verdict"] = "hyponormal".into();
    let p = tmp.path().join("f.json");
    std::fs::write(&p, file.to_string()).unwrap();
    let (code, stdout, stderr) = run(&["check-hyponormal", "--symbol", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["body"]["expectations"]["mismatches"][0]["path"], "verdict");
    assert!(stderr.contains("expectation(s) not met"));
}
