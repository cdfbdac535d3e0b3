use std::process::{Command, Output};

use serde_json::Value;

fn semifield(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semifield")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = semifield(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn quaternion_automorphism_groups_over_f9() {
    let x = json(&["aut", "--p", "3", "--r", "1", "--n", "2", "--f", "t^2 - x"]);
    assert_eq!(x["group"]["order"], 8);
    assert_eq!(x["group"]["tag"], "Dicyclic(2)");
    assert_eq!(x["oracle"], "agrees");
    let x1 = json(&["aut", "--p", "3", "--r", "1", "--n", "2", "--f", "t^2 - (x+1)"]);
    assert_eq!(x1["group"]["order"], 4);
    assert_eq!(x1["group"]["tag"], "Cyclic(4)");
    // --a builds the same algebra as --f
    assert_eq!(json(&["aut", "--p", "3", "--n", "2", "--a", "x+1"])["group"], x1["group"]);
}

#[test]
fn classify_f9_has_two_classes() {
    let r = json(&["classify", "--p", "3", "--r", "1", "--m", "2"]);
    assert_eq!(r["count"], 2);
    assert_eq!(r["formula_matches"], true);
}

#[test]
fn iso_on_identical_specs_gives_identity_witness() {
    let r = json(&["iso", "--p", "3", "--n", "2", "--f", "t^2 - x", "--g", "t^2 - x"]);
    assert_eq!(r["verdict"]["verdict"], "isomorphic");
    assert_eq!(r["verdict"]["j"], 0);
    assert_eq!(r["verdict"]["k"], 1);
}

#[test]
fn iso_rejects_across_classes() {
    let r = json(&["iso", "--p", "3", "--n", "2", "--f", "t^2 - x", "--g", "t^2 - (x+1)"]);
    assert_eq!(r["verdict"]["verdict"], "not_isomorphic");
    assert_eq!(r["oracle"], "agrees");
}

#[test]
fn reports_are_deterministic_and_embed_the_spec() {
    let args = ["family", "--p", "3", "--n", "2", "--family", "kn2", "--eta", "x+2", "--mu", "x"];
    let a = semifield(&args);
    let b = semifield(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.contains("spec: family --p 3 --n 2 --family kn2 --eta \"x+2\" --mu \"x\""));
}

#[test]
fn spec_files_reproduce_direct_runs() {
    let direct = semifield(&["aut", "--p", "2", "--n", "2", "--f", "t^2 - x", "--json"]);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("job.txt");
    let report: Value = serde_json::from_slice(&direct.stdout).unwrap();
    std::fs::write(&path, report["spec"].as_str().unwrap()).unwrap();
    let from_file = semifield(&["--spec", path.to_str().unwrap()]);
    assert_eq!(direct.stdout, from_file.stdout);
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = semifield(&["classify", "--p", "2", "--m", "2", "--json", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["count"], 1);
}

#[test]
fn catalog_lines_are_sorted_with_sorted_keys() {
    let out = semifield(&["catalog", "--p", "5", "--m", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let reps: Vec<u64> = text
        .lines()
        .map(|l| {
            let v: Value = serde_json::from_str(l).unwrap();
            let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
            assert!(l.find("\"aut_order\"") < l.find("\"class_size\""));
            let mut sorted = keys.clone();
            sorted.sort();
            assert_eq!(keys, sorted);
            v["representative"].as_u64().unwrap()
        })
        .collect();
    assert_eq!(reps.len(), 3);
    assert!(reps.windows(2).all(|w| w[0] < w[1]));
    let orders: Vec<Value> = text.lines().map(|l| serde_json::from_str::<Value>(l).unwrap()["aut_order"].clone()).collect();
    assert!(orders.contains(&Value::from(12)));
}

#[test]
fn exit_codes() {
    assert_eq!(semifield(&["aut", "--p", "3", "--n", "2", "--f", "t^^2"]).status.code(), Some(2));
    assert_eq!(semifield(&["aut", "--p", "4", "--n", "2", "--f", "t^2"]).status.code(), Some(2));
    assert_eq!(semifield(&["bogus"]).status.code(), Some(2));
    // t^2 - 1 is reducible
    assert_eq!(semifield(&["aut", "--p", "3", "--n", "2", "--f", "t^2 - 1"]).status.code(), Some(3));
    assert_eq!(semifield(&["family", "--p", "3", "--n", "2", "--eta", "x"]).status.code(), Some(3));
    // n < m - 1 needs the brute-force oracle
    let over = semifield(&["aut", "--p", "2", "--n", "2", "--f", "t^4 - x*t - 1", "--oracle-bound", "100"]);
    assert_eq!(over.status.code(), Some(4));
    assert_eq!(semifield(&["aut", "--p", "2", "--n", "2", "--f", "t^4 - x*t - 1"]).status.code(), Some(0));
}

#[test]
fn family_fingerprints_report() {
    let r = json(&["family", "--p", "3", "--n", "2", "--eta", "1", "--mu", "1"]);
    assert_eq!(r["fingerprints"]["pairwise_distinct"], true);
    assert_eq!(r["fingerprints"]["coincide"], false);
}

#[test]
fn kn1_restricted_maps_compared_at_order_16() {
    let r = json(&["family", "--p", "2", "--n", "2", "--family", "kn1", "--eta", "1", "--mu", "x"]);
    assert_eq!(r["complete"], false);
    assert_eq!(r["oracle"]["restricted_is_subset"], true);
}
