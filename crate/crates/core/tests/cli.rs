use std::process::Command;

use serde_json::Value;

fn q6(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_q6")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, text) = q6(args);
    assert_eq!(code, 0, "{args:?}");
    serde_json::from_str(&text).unwrap()
}

const SEGRE: &str = r#"{"p":2,"gp":["0","0","0"],"g1":["0","1"],"g2":["-1","0"],"g3":["0","0"],"g5":["0","0"]}"#;

#[test]
fn reference_outputs() {
    let b = json(&["bidegree", "builtin:veronese_cone", "--trials", "7", "--seed", "1"]);
    assert_eq!((b["a"].as_u64(), b["b"].as_u64()), (Some(1), Some(3)));
    assert_eq!(json(&["smooth", SEGRE])["verdict"], "Smooth");
    assert_eq!(json(&["classify", "builtin:horizontal3", "--seed", "1"])["case"], "HorizontalP3");
    assert_eq!(json(&["psi", "builtin:segre_divisor", "--degree"])["psi_degree"], 1);
    assert_eq!(json(&["builtin", "segre"])["schema_version"], 1);
}

#[test]
fn identical_argv_gives_identical_bytes() {
    let args = ["degree", "builtin:segre", "--trials", "3", "--seed", "9"];
    assert_eq!(q6(&args), q6(&args));
}

#[test]
fn divisor_output_round_trips() {
    let n = json(&["normalize-p2", SEGRE]);
    let back = n["transformed"].to_string();
    assert_eq!(json(&["smooth", &back])["verdict"], "Smooth");
}

#[test]
fn exit_codes() {
    assert_eq!(q6(&["smooth", "builtin:nope"]).0, 2);
    assert_eq!(q6(&["smooth", "{not json"]).0, 2);
    // horizontal3 lies inside H0
    let h0 = r#"[[1,0,0,0,0,0,0,0],[0,1,0,0,0,0,0,0],[0,0,1,0,0,0,0,0],[0,0,0,0,1,0,0,0]]"#;
    let (code, text) = q6(&["meet", "builtin:horizontal3", "--subspace", h0, "--seed", "1"]);
    assert_eq!(code, 3);
    assert_eq!(serde_json::from_str::<Value>(&text).unwrap()["finite"], false);
    // missing required seed is a usage error
    assert_eq!(q6(&["bidegree", "builtin:segre"]).0, 2);
}

#[test]
fn table_format() {
    let (code, text) = q6(&["--format", "table", "psi", "builtin:segre_divisor", "--at", "1,2"]);
    assert_eq!(code, 0);
    assert!(text.lines().any(|l| l.starts_with("psi") && l.contains("[\"1\",\"2\"")));
}
