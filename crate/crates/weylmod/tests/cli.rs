//! End-to-end tests of the `weylmod` binary: exit codes, payload shapes,
//! format switches and the cache environment variable.

use std::process::{Command, Output};

fn weylmod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weylmod"))
        .args(args)
        .env_remove("WEYLMOD_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn json_payload(out: &Output) -> serde_json::Value {
    let v: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("stdout is a JSON envelope");
    v["payload"].clone()
}

#[test]
fn simple_c4_reports_dimension_sixteen() {
    let out = weylmod(&["simple", "C4", "0001", "-p", "2", "--format", "json"]);
    assert!(out.status.success());
    let payload = json_payload(&out);
    assert_eq!(payload["dim"], serde_json::json!(16));
    assert_eq!(payload["dim_weyl"], serde_json::json!(42));
    // The characteristic assumption warning goes to stderr.
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("characteristic assumption"));
}

#[test]
fn stabilizer_check_paper_table_matches() {
    let out = weylmod(&[
        "stabilizer",
        "C4",
        "0001",
        "-p",
        "2",
        "--check-paper-table",
        "C4",
    ]);
    assert!(out.status.success());
    let payload = json_payload(&out);
    assert_eq!(payload["table_check"]["match"], serde_json::json!(true));
    assert_eq!(payload["exponents"].as_array().unwrap().len(), 16);
}

#[test]
fn invalid_family_exits_two() {
    let out = weylmod(&["roots", "Z9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_weight_exits_two() {
    let out = weylmod(&["weyl-dim", "C4", "001"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cap_exceeded_exits_three() {
    let out = weylmod(&["simple", "C4", "1111", "-p", "2"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("unsupported"));
}

#[test]
fn exceptional_lattice_exits_three() {
    let out = weylmod(&["lattice", "C4", "0001", "-p", "2"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn indeterminate_incidence_exits_four() {
    let out = weylmod(&[
        "incidence",
        "--n",
        "2",
        "--p",
        "2",
        "--r",
        "1",
        "--a",
        "-3",
        "--b",
        "1",
        "--oracle-cap",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(4));
    let payload = json_payload(&out);
    assert_eq!(payload["status"], serde_json::json!("indeterminate"));
}

#[test]
fn incidence_json_schema() {
    let out = weylmod(&[
        "incidence",
        "--n",
        "2",
        "--p",
        "3",
        "--r",
        "1",
        "--a",
        "3",
        "--b",
        "1",
        "--oracle",
    ]);
    assert!(out.status.success());
    let payload = json_payload(&out);
    assert_eq!(payload["spec"]["q"], serde_json::json!(3));
    assert_eq!(payload["bidegree"], serde_json::json!([3, 1]));
    assert_eq!(payload["table"]["h0"], serde_json::json!(29));
    assert_eq!(payload["table"]["h1"], serde_json::json!(0));
    assert_eq!(payload["status"], serde_json::json!("closed-form"));
    assert_eq!(payload["canonical"], serde_json::json!([0, -2]));
    assert_eq!(payload["ample"], serde_json::json!(true));
    assert_eq!(payload["oracle_match"], serde_json::json!(true));
}

#[test]
fn tsv_stabilizer_table() {
    let out = weylmod(&["stabilizer", "B2", "10", "-p", "2", "--format", "tsv"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("root\tn"));
    let rest: Vec<&str> = lines.collect();
    assert!(rest.contains(&"11\t1"));
    assert!(rest.contains(&"12\t0"));
    assert!(rest.contains(&"01\tinf"));
}

#[test]
fn cache_hit_via_environment_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let run = |extra: &[&str]| {
        let mut args = vec!["jantzen", "B2", "10", "-p", "2", "--check-gram"];
        args.extend_from_slice(extra);
        Command::new(env!("CARGO_BIN_EXE_weylmod"))
            .args(&args)
            .env("WEYLMOD_CACHE_DIR", dir.path())
            .output()
            .expect("binary runs")
    };
    let first = run(&[]);
    assert!(first.status.success());
    let v1: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(v1["cache"], serde_json::json!("miss-stored"));
    let second = run(&[]);
    let v2: serde_json::Value = serde_json::from_slice(&second.stdout).unwrap();
    assert_eq!(v2["cache"], serde_json::json!("hit"));
    assert_eq!(v1["payload"], v2["payload"]);
    let third = run(&["--verify-cache"]);
    let v3: serde_json::Value = serde_json::from_slice(&third.stdout).unwrap();
    assert_eq!(v3["cache"], serde_json::json!("hit-verified"));
    assert_eq!(v1["payload"], v3["payload"]);
    let fourth = run(&["--no-cache"]);
    let v4: serde_json::Value = serde_json::from_slice(&fourth.stdout).unwrap();
    assert_eq!(v4["cache"], serde_json::json!("uncached"));
    assert_eq!(v1["payload"], v4["payload"]);
    assert_eq!(v1["payload"]["gram_check"]["ok"], serde_json::json!(true));
}

#[test]
fn very_ample_subcommand() {
    let out = weylmod(&["very-ample", "A2", "1,2", "--chi", "2,2", "-p", "2"]);
    assert!(out.status.success());
    let payload = json_payload(&out);
    assert_eq!(payload["very_ample"], serde_json::json!(true));
    // χ with a zero coefficient is a character but not ample.
    let out = weylmod(&["very-ample", "A2", "1,2", "--chi", "0,2", "-p", "2"]);
    assert!(out.status.success());
    assert_eq!(json_payload(&out)["very_ample"], serde_json::json!(false));
    // Not a character at all: invalid input.
    let out = weylmod(&["very-ample", "A2", "1,2", "--chi", "1,1", "-p", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn decompose_b2_example() {
    let out = weylmod(&["decompose", "B2", "1,0", "-p", "2"]);
    assert!(out.status.success());
    let payload = json_payload(&out);
    let factors = payload["factors"].as_array().unwrap();
    assert_eq!(factors.len(), 2);
}

#[test]
fn root_system_string_roundtrip() {
    for name in ["A1", "B2", "C4", "D4", "G2", "F4", "E6"] {
        let out = weylmod(&["roots", name]);
        assert!(out.status.success(), "{name}");
        let payload = json_payload(&out);
        assert_eq!(payload["system"], serde_json::json!(name));
    }
}
