use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fermat-mzv")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim().to_string()
}

#[test]
fn eval_depth_one_value() {
    let v = json(&["eval", "zf2(2; w)", "--tol", "1e-8"]);
    let x = v["value"].as_f64().unwrap();
    let want = std::f64::consts::FRAC_PI_2 * std::f64::consts::LN_2;
    assert!((x - want).abs() < 1e-8, "{x}");
    assert!(v["error_estimate"].as_f64().unwrap() <= 1e-8);
}

#[test]
fn eval_classical_zeta_and_oracle() {
    let v = json(&["eval", "z(2)", "--tol", "1e-6"]);
    assert!((v["value"].as_f64().unwrap() - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-6);
    let v = json(&["eval", "zf2(1,1; w,w)", "--terms", "8000", "--oracle"]);
    let (a, b) = (v["value"].as_f64().unwrap(), v["oracle"]["value"].as_f64().unwrap());
    assert!((a - b).abs() < 1e-6);
}

#[test]
fn basis_degree_two() {
    let v = json(&["basis", "--degree", "2", "--level", "4"]);
    assert_eq!(v.as_array().unwrap().len(), 4);
    let v = json(&["basis", "--degree", "3", "--level", "1"]);
    assert_eq!(v, serde_json::json!(["f3"]));
}

#[test]
fn dims_table() {
    let v = json(&["dims", "--max", "5"]);
    assert_eq!(v["enumerated"], serde_json::json!([1, 2, 4, 8, 16, 32]));
    assert_eq!(v["sigma_invariant_4"], v["enumerated"]);
}

#[test]
fn closed_form_text() {
    let v = json(&["closed-form", "3"]);
    assert_eq!(v["expression"], "1/48*pi^3 + 1/4*pi*log2^2");
}

#[test]
fn printed_values_parse_back() {
    let w = stdout(&["shuffle", "[0 1]", "(1/2+i)[1]"]);
    assert_eq!(stdout(&["shuffle", &w, "[]"]), w);
    let u = stdout(&["shuffle", "--u", "(2)[f1]", "(i)[t]"]);
    assert_eq!(stdout(&["shuffle", "--u", &u, "1"]), u);
    let c = json(&["compile", "zf2(1,2; w,w1)"]);
    assert_eq!(c["template"], serde_json::json!(["eta", "eta1", "eta0"]));
}

#[test]
fn coaction_of_generators() {
    assert_eq!(stdout(&["coaction", "--u", "f3", "--tilde"]), "0");
    let t = json(&["coaction", "--symbol", "Im(0; i 0 -i; 1)", "--tilde", "--simplify"]);
    assert!(!t.as_array().unwrap().is_empty());
}

#[test]
fn check_exit_codes() {
    let out = run(&["check", "coefficients"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("6/6 checks passed"));
    let out = run(&["check", "all", "--max", "5"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn parse_errors_name_token_and_grammar() {
    let out = run(&["eval", "zf2(1; q)"]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("`q`") && err.contains("expected"), "{err}");
    let out = run(&["check", "nope"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("nope"));
    let out = run(&["eval", "zN(4; 2; i)"]);
    assert!(!out.status.success());
}
