use serde_json::Value;
use std::process::{Command, Output};

fn cyclotome(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclotome"))
        .args(args)
        .env_remove("CYCLOTOME_MAX_ENUM")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = cyclotome(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

const TERNARY: &[&str] = &["--p", "3", "--s", "1", "--m", "3", "--e", "2", "--t", "2", "--a", "1", "--delta", "0,1", "--modulus", "1,2,0,1"];

fn with(base: &[&'static str], extra: &[&'static str]) -> Vec<&'static str> {
    base.iter().chain(extra).copied().collect()
}

#[test]
fn closed_form_weights() {
    let out = cyclotome(&with(&["weights"], &with(TERNARY, &["--method", "closed"])));
    assert!(out.status.success());
    assert!(stdout(&out).contains("1 + 52z^9 + 676z^18"), "{}", stdout(&out));
}

#[test]
fn every_method_gives_the_same_json() {
    let reference = json(&with(&["weights"], &with(TERNARY, &["--method", "closed"])));
    for method in ["naive", "tsum", "auto"] {
        let mut other = json(&with(&["weights"], &with(TERNARY, &["--method", method])));
        other["methods"] = reference["methods"].clone();
        assert_eq!(other, reference, "{method}");
    }
    assert_eq!(reference["classification"], "thm1");
    assert_eq!((reference["n"].as_u64(), reference["k"].as_u64(), reference["d"].as_u64()), (Some(26), Some(6), Some(9)));
    let weights: Vec<(u64, String)> = reference["weights"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["w"].as_u64().unwrap(), e["count"].as_str().unwrap().to_string()))
        .collect();
    assert_eq!(weights, vec![(0, "1".into()), (9, "52".into()), (18, "676".into())]);
}

#[test]
fn json_round_trips_byte_for_byte() {
    let commands: Vec<Vec<&str>> = vec![
        with(&["weights"], TERNARY),
        with(&["params"], TERNARY),
        with(&["verify"], TERNARY),
        vec!["periods", "--p", "2", "--m", "6", "--L", "7", "--modulus", "1,1,0,1,1,0,1", "--tallies"],
        vec!["cyclonum", "--p", "3", "--m", "3", "--L", "2"],
        vec!["corpus", "--max-enum", "0"],
    ];
    for args in commands {
        let mut all = args.clone();
        all.push("--json");
        let out = cyclotome(&all);
        assert!(out.status.success(), "{args:?}");
        let text = stdout(&out);
        let value: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string_pretty(&value).unwrap() + "\n", text, "{args:?}");
    }
}

#[test]
fn large_counts_are_strings() {
    let v = json(&[
        "weights", "--p", "2", "--m", "6", "--e", "7", "--t", "7", "--modulus", "1,1,0,1,1,0,1", "--method", "closed",
    ]);
    let last = v["weights"].as_array().unwrap().last().unwrap().clone();
    assert_eq!(last["w"], 42);
    assert_eq!(last["count"], "10460353203");
}

#[test]
fn index_two_periods() {
    let v = json(&["periods", "--p", "2", "--s", "1", "--m", "6", "--L", "7", "--modulus", "1,1,0,1,1,0,1"]);
    let mut values: Vec<i64> = v["values"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
    assert_eq!(values[0], 5);
    values.sort();
    assert_eq!(values, vec![-3, -3, -3, 1, 1, 1, 5]);
    assert_eq!(v["modified_zero"], 9);
    assert_eq!(v["closed_form"]["variant"], "index-2");
    assert_eq!(v["closed_form"]["params"]["class_number"], 1);
    assert_eq!(v["closed_form"]["params"]["P"], -4);
}

#[test]
fn periods_without_closed_form() {
    // GF(27) has no order-13 closed form
    let v = json(&["periods", "--p", "3", "--m", "3", "--L", "13"]);
    assert_eq!(v["closed_form"], Value::Null);
    assert_eq!(v["values"].as_array().unwrap().len(), 13);
}

#[test]
fn params_reproduce_polynomials() {
    let v = json(&with(&["params"], TERNARY));
    assert_eq!(v["h"], "2,0,2,0,2,0,1");
    assert_eq!(v["h_i"], serde_json::json!(["1,0,2,1", "2,0,1,1"]));
    assert_eq!(v["assumptions"]["condition_iii"], true);
    let text = stdout(&cyclotome(&with(&["params"], TERNARY)));
    assert!(text.contains("h(x) = x^6 + 2x^4 + 2x^2 + 2"), "{text}");
}

#[test]
fn cyclotomic_numbers_match_closed_form() {
    let v = json(&["cyclonum", "--p", "7", "--m", "2", "--L", "2"]);
    assert_eq!(v["closed_form"]["agrees"], true);
    assert_eq!(v["numbers"], serde_json::json!([[11, 12], [12, 12]]));
}

#[test]
fn corpus_passes() {
    let out = cyclotome(&["corpus"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("6/6 examples passed"));
}

#[test]
fn verify_reports_agreement() {
    let v = json(&with(&["verify"], TERNARY));
    assert_eq!(v["methods_agreed"], true);
    assert_eq!(v["verification"]["passed"], true);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["weights", "--p", "3", "--m", "3", "--e", "2", "--t", "2", "--delta", "0"],
        vec!["weights", "--p", "3", "--m", "3", "--e", "2", "--t", "3"],
        vec!["weights", "--p", "3", "--m", "3", "--e", "2", "--t", "2", "--method", "fastest"],
        vec!["periods", "--p", "3", "--m", "3"],
        vec!["frobnicate"],
    ] {
        assert_eq!(cyclotome(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn computation_errors_exit_one() {
    let out = cyclotome(&["weights", "--p", "3", "--m", "3", "--e", "5", "--t", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("does not divide"));
    let out = cyclotome(&["weights", "--p", "4", "--m", "3", "--e", "2", "--t", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn enumeration_cap_is_enforced() {
    let out = cyclotome(&with(&["weights"], &with(TERNARY, &["--method", "naive", "--max-enum", "100"])));
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(env!("CARGO_BIN_EXE_cyclotome"))
        .args(with(&["weights"], &with(TERNARY, &["--method", "tsum"])))
        .env("CYCLOTOME_MAX_ENUM", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds the cap"));
}
