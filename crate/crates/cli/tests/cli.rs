use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_carlitz-lab")).args(args).env_remove("CARLITZ_LAB_CAP").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = run(&all);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn bracket_examples() {
    let v = json(&["bracket", "--q", "3", "--a", "t^2", "--k", "1"]);
    assert_eq!(v["brackets"][0]["text"], "θ^3 + θ");
    assert_eq!(v["agreement"], true);
    assert_eq!(v["brackets"][0]["formulas"].as_object().unwrap().len(), 5);
    let v = json(&["bracket", "--a", "1"]);
    assert_eq!(v["brackets"].as_array().unwrap().len(), 1);
    assert_eq!(v["brackets"][0]["text"], "1");
    let v = json(&["bracket", "--a", "t", "--k", "5"]);
    assert_eq!(v["brackets"][0]["value"], serde_json::json!([]));
    let text = stdout(&run(&["bracket", "--q", "4", "--a", "(u+1)*t^2 + u"]));
    assert!(text.ends_with("agreement=true\n"), "{text}");
}

#[test]
fn parse_errors_report_the_column() {
    let o = run(&["bracket", "--a", "t^2 + 3y"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("column 8"));
}

#[test]
fn power_and_hyper_sums() {
    let v = json(&["power-sum", "--q", "3", "--i", "1", "--k", "-1"]);
    // 1/L_1 = 1/(θ^3 − θ)
    assert_eq!(v["brute"]["num"], serde_json::json!([[2]]));
    assert_eq!(v["brute"]["den"], serde_json::json!([[0], [2], [0], [1]]));
    assert_eq!(v["agreement"], true);
    let v = json(&["hyper-sum", "--q", "3", "--i", "1", "--pairs", "1:0"]);
    assert_eq!(v["brute"]["num"], serde_json::json!([[2]]));
    assert_eq!(v["agreement"], true);
    let v = json(&["power-sum", "--q", "2", "--i", "2", "--k", "2"]);
    assert_eq!(v["brute_text"], "0");
    let v = json(&["power-sum", "--q", "3", "--i", "2", "--exponents", "2,3"]);
    assert_eq!(v["k"], 35);
    assert_eq!(v["agreement"], true);
}

#[test]
fn cap_errors_name_the_limit() {
    let o = run(&["power-sum", "--q", "3", "--i", "5", "--k", "1", "--cap", "100"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("3^5") && err.contains("100"), "{err}");
    let o = Command::new(env!("CARGO_BIN_EXE_carlitz-lab"))
        .args(["special-poly", "--q", "3", "--m", "1"])
        .env("CARLITZ_LAB_CAP", "5")
        .output()
        .unwrap();
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("largest completed i = 1"), "{err}");
}

#[test]
fn special_poly_output() {
    let o = run(&["special-poly", "--q", "3", "--m", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("x*z"));
    let v = json(&["special-poly", "--q", "3", "--m", "3"]);
    for key in ["m", "q", "N", "match", "integral", "poly", "max_i", "millis"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["N"], 27);
    assert_eq!(v["match"], true);
    let o = run(&["special-poly", "--q", "3", "--m", "5"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn hyper_command() {
    let v = json(&["hyper", "--q", "5", "--a", "t^4 + 2t", "--j", "2", "--k", "1"]);
    assert_eq!(v["text"], "θ^2");
    assert_eq!(v["vandermonde"]["t_independent"], true);
    assert_eq!(v["agreement"], true);
}

#[test]
fn verify_exit_codes_and_report() {
    let o = run(&["verify", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("algebra, hyper, symfun, vandermonde, carlitz, powersums, logalg, all"));
    let v = json(&["verify", "symfun", "--seed", "3"]);
    assert_eq!(v["ok"], true);
    let check = &v["checks"][0];
    for key in ["module", "operation", "check", "passed", "detail", "millis"] {
        assert!(check.get(key).is_some(), "missing {key}");
    }
    let o = run(&["verify", "all", "--q", "3", "--seed", "7"]);
    assert!(o.status.success());
}

#[test]
fn field_flags() {
    let v = json(&["bracket", "--p", "2", "--e", "2", "--modulus", "1,1,1", "--a", "t"]);
    assert_eq!(v["field"]["modulus"], serde_json::json!([1, 1, 1]));
    let o = run(&["bracket", "--p", "2", "--e", "2", "--modulus", "1,0,1", "--a", "t"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["bracket", "--q", "6", "--a", "t"]);
    assert_eq!(o.status.code(), Some(2));
}
