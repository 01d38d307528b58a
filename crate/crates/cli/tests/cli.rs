use serde_json::Value;
use unitary_chow::run;

fn json(args: &[&str]) -> (i32, String) {
    let mut argv = vec!["unitary-chow"];
    argv.extend_from_slice(args);
    argv.extend_from_slice(&["--format", "json"]);
    run(argv)
}

#[test]
fn json_round_trips() {
    for args in [
        &["verify", "lemma1", "--n", "5"][..],
        &["verify", "section2", "--variety", "P2", "--samples", "8"],
        &["verify", "ranks", "--n", "3"],
        &["ring", "hk", "--n", "4", "--k", "2"],
    ] {
        let (code, out) = json(args);
        assert_eq!(code, 0, "{out}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["schema_version"], 1);
        let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
        assert_eq!(again, out);
        assert_eq!(serde_json::from_str::<Value>(&again).unwrap(), v);
    }
}

#[test]
fn output_is_byte_identical() {
    for args in [
        &["verify", "section2", "--variety", "H1", "--seed", "7", "--samples", "16"][..],
        &["verify", "st-mechanism", "--n", "4", "--k", "2", "--seed", "3", "--samples", "16"],
    ] {
        assert_eq!(json(args), json(args));
    }
    let a = json(&["verify", "section2", "--variety", "P2", "--seed", "1", "--samples", "16"]).1;
    let b = json(&["verify", "section2", "--variety", "P2", "--seed", "2", "--samples", "16"]).1;
    assert_ne!(a, b);
}

#[test]
fn timing_is_opt_in() {
    let (_, out) = json(&["verify", "lemma1"]);
    assert!(!out.contains("duration_ms"));
    let (_, out) = json(&["verify", "lemma1", "--timing"]);
    assert!(out.contains("duration_ms"));
}

#[test]
fn documented_examples() {
    let (code, out) = json(&["verify", "lemma1", "--n", "4"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let ranks: Vec<u64> = v["report"]["pieces"].as_array().unwrap().iter().map(|p| p["quotient"].as_u64().unwrap()).collect();
    assert_eq!(ranks, [1, 0, 1, 1, 0, 1]);

    let (_, out) = json(&["verify", "ranks", "--n", "3"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let row = &v["report"]["valuations"]["rows"][1];
    assert_eq!((row["k"].as_u64(), row["v2_rk_f"].as_u64()), (Some(1), Some(2)));

    let (_, out) = json(&["ring", "h1", "--n", "2"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let basis: Vec<&str> =
        v["report"]["graded"].as_array().unwrap().iter().flat_map(|g| g["basis"].as_array().unwrap()).filter_map(Value::as_str).collect();
    assert_eq!(basis, ["1", "a"]);
}

#[test]
fn exit_codes() {
    assert_eq!(run(["unitary-chow", "--help"]).0, 0);
    assert_eq!(run(["unitary-chow", "verify"]).0, 2);
    assert_eq!(run(["unitary-chow", "verify", "lemma16", "--n", "4", "--k", "3"]).0, 2);
    assert_eq!(run(["unitary-chow", "verify", "main-steen", "--n", "10"]).0, 2);
    assert_eq!(run(["unitary-chow", "verify", "ranks", "--n", "40"]).0, 2);
    assert_eq!(run(["unitary-chow", "verify", "st-mechanism", "--n", "4", "--k", "1", "--threshold", "1"]).0, 2);
}
