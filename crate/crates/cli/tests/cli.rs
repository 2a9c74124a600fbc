use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn cend(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cend"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn cend");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn run_json(args: &[&str], input: &Value) -> (Value, i32) {
    let mut full = args.to_vec();
    full.push("--json");
    let out = cend(&full, &input.to_string());
    let text = String::from_utf8(out.stdout).unwrap();
    let v = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text:?}"));
    (v, out.status.code().unwrap())
}

fn verify(report: &Value) -> (bool, i32) {
    let (v, code) = run_json(&["verify"], report);
    (v["verified"] == json!(true), code)
}

#[test]
fn product_matches_hand_computation() {
    // x _λ 1 = ∂ + x + λ
    let (v, code) = run_json(&["product"], &json!({"a": "x", "b": "1"}));
    assert_eq!(code, 0);
    assert_eq!(v["series"], json!({"l^0": [["d + x"]], "l^1": [["1"]]}));
    assert_eq!(verify(&v), (true, 0));
}

#[test]
fn output_is_deterministic() {
    let input = json!({"p": [["x", "0"], ["0", "x - 1"]]});
    let a = cend(&["anti-inv-search", "--json", "--degree-cap", "1"], &input.to_string());
    let b = cend(&["anti-inv-search", "--json", "--degree-cap", "1"], &input.to_string());
    assert_eq!(a.stdout, b.stdout);
    let input = json!({"n": 1, "count": 5});
    let a = cend(&["check-axioms", "--json", "--seed", "9"], &input.to_string());
    let b = cend(&["check-axioms", "--json", "--seed", "9"], &input.to_string());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn smith_certificate_round_trips_and_detects_tampering() {
    let (mut v, code) = run_json(&["smith"], &json!({"matrix": [["x", "1"], ["0", "x"]]}));
    assert_eq!(code, 0);
    assert_eq!(v["divisors"], json!(["1", "x^2"]));
    assert_eq!(verify(&v), (true, 0));
    v["certificate"]["divisors"] = json!(["1", "x^2 + 1"]);
    assert_eq!(verify(&v), (false, 1));
}

#[test]
fn iso_and_anti_auto() {
    let (v, _) = run_json(&["iso"], &json!({"p": [["x", "0"], ["0", "x - 1"]], "q": [["x + 1", "0"], ["0", "x"]]}));
    assert_eq!((v["isomorphic"].clone(), v["alpha"].clone()), (json!(true), json!("1")));
    assert!(verify(&v).0);
    let (v, _) = run_json(&["iso"], &json!({"p": "x^2", "q": "x"}));
    assert_eq!(v["isomorphic"], json!(false));
    assert!(verify(&v).0);
    let (mut v, _) = run_json(&["anti-auto"], &json!({"p": "x^3 - 2*x^2 + x"}));
    assert_eq!(v["exists"], json!(false));
    assert!(verify(&v).0);
    v["exists"] = json!(true);
    assert!(!verify(&v).0);
}

#[test]
fn budgets_are_mandatory_in_json_mode() {
    let (v, code) = run_json(&["anti-inv-search"], &json!({"p": "x"}));
    assert_eq!(code, 1);
    assert_eq!(v["error"]["code"], json!("E_BUDGET"));
    let (v, code) = run_json(&["classify-cend1", "--rounds", "4"], &json!(["x"]));
    assert_eq!((v["error"]["code"].clone(), code), (json!("E_BUDGET"), 1));
    // pretty mode falls back to defaults
    let out = cend(&["anti-inv-search"], r#"{"p":"x"}"#);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("found: true"));
}

#[test]
fn undecided_exits_with_two() {
    let (v, code) = run_json(&["classify-cend1", "--degree-cap", "8", "--rounds", "1"], &json!(["x^2"]));
    assert_eq!(code, 2);
    assert_eq!(v["status"], json!("budget_exhausted"));
    assert!(verify(&v).0);
}

#[test]
fn classify_table_via_cli() {
    let cases = [
        (json!(["1"]), "CPARTIAL"),
        (json!(["x^2"]), "P_ONLY"),
        (json!({"gens": ["d*x + x^2"]}), "PQ"),
        (json!(["x", "d"]), "FULL"),
    ];
    for (input, tag) in cases {
        let (v, code) = run_json(&["classify-cend1", "--degree-cap", "8", "--rounds", "12"], &input);
        assert_eq!((v["type"].as_str(), code), (Some(tag), 0), "{input}");
        assert!(verify(&v).0, "{input}");
    }
}

#[test]
fn ideal_both_sides() {
    for side in ["left", "right"] {
        let (v, code) = run_json(&["ideal"], &json!({"side": side, "p": "x", "gens": ["d + x"]}));
        assert_eq!(code, 0);
        assert!(verify(&v).0, "{side}");
    }
    let (mut v, _) = run_json(&["ideal"], &json!({"side": "left", "p": "x", "gens": ["x"]}));
    assert_eq!(v["q"], json!([["x"]]));
    v["certificate"]["q"] = json!([["1"]]);
    assert!(!verify(&v).0);
}

#[test]
fn extension_and_gclie_verbs() {
    let (v, code) = run_json(&["extension-build"], &json!({"kind": "factorization", "p": "x^2", "r": "x", "s": "x"}));
    assert_eq!((v["passed"].clone(), code), (json!(true), 0));
    assert!(verify(&v).0);
    let (v, code) = run_json(&["extension-build"], &json!({"kind": "factorization", "p": "x^2", "r": "x", "s": "1"}));
    assert_eq!((v["error"]["code"].clone(), code), (json!("E_MISMATCH"), 1));

    let (v, _) = run_json(&["oc-gens"], &json!({"p": [["0", "1"], ["-1", "0"]], "epsilon": -1, "max_n": 1}));
    assert_eq!(v["algebra"], json!("spc"));
    assert!(verify(&v).0);

    let (v, _) = run_json(&["invariance-check", "--degree-cap", "3"], &json!({"p": "1", "epsilon": 1, "a": "2*x + d"}));
    assert_eq!(v["invariant"], json!(true));
    let (v, _) = run_json(&["invariance-check", "--degree-cap", "3"], &json!({"p": "1", "epsilon": 1, "a": "x"}));
    assert_eq!(v["invariant"], json!(false));
    assert!(verify(&v).0);
}

#[test]
fn probes() {
    let (v, code) = run_json(
        &["irreducibility-probe", "--degree-cap", "4", "--rounds", "8"],
        &json!({"gens": ["1", "2*x + d"], "start": ["d"]}),
    );
    assert_eq!((v["outcome"].as_str(), code), (Some("irreducible"), 0));
    assert!(verify(&v).0);
    let eye = json!([["1", "0"], ["0", "1"]]);
    let (v, code) = run_json(
        &["unital-probe", "--degree-cap", "4", "--rounds", "8"],
        &json!([eye, [["x", "0"], ["0", "0"]]]),
    );
    assert_eq!((v["outcome"].as_str(), code), (Some("cend_n"), 0));
    assert!(verify(&v).0);
}

#[test]
fn parse_errors_carry_positions() {
    let (v, code) = run_json(&["product"], &json!({"a": "x^", "b": "1"}));
    assert_eq!(code, 1);
    assert_eq!(v["error"]["code"], json!("E_PARSE"));
    assert_eq!(v["error"]["offset"], json!(2));
    let out = cend(&["smith", "--json"], "{\"matrix\": [");
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["code"], json!("E_PARSE"));
    assert!(v["error"]["line"].is_number());
    let (v, _) = run_json(&["smith"], &json!({"matrix": [["x", "1"]]}));
    assert_eq!(v["error"]["code"], json!("E_PARSE"));
    let (v, _) = run_json(&["iso"], &json!({"p": "0", "q": "x"}));
    assert_eq!(v["error"]["code"], json!("E_DEGENERATE"));
}
