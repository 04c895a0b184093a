use std::process::{Command, Output};

use serde_json::Value;

fn coxsort(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxsort")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = coxsort(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn count_b2() {
    let v = json(&["count", "--group", "B2", "--coxeter", "0,1"]);
    assert_eq!(v["catalan"], 6);
    assert_eq!(v["narayana_ranks"], serde_json::json!([1, 4, 1]));
    assert_eq!(v["all_match"], true);
}

#[test]
fn sortable_check_b2() {
    let v = json(&["sortable", "check", "1,0", "--group", "B2", "--coxeter", "0,1"]);
    assert_eq!(v["sortable"], false);
    assert_eq!(v["sorting_word"], "s1|s0");
    let v = json(&["sortable", "check", "0,1,0", "--group", "B2", "--coxeter", "0,1"]);
    assert_eq!(v["sortable"], true);
}

#[test]
fn verify_a3_exhaustive() {
    let out = coxsort(&["verify", "--group", "A3", "--mode", "exhaustive"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["group"], "A3");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] != "fail"));
}

#[test]
fn output_is_byte_stable() {
    let args = ["verify", "--group", "B3", "--mode", "sampled", "--samples", "200", "--seed", "11"];
    let a = coxsort(&args);
    let b = coxsort(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let a = coxsort(&["cluster", "list", "--group", "D4", "--format", "csv"]);
    let b = coxsort(&["cluster", "list", "--group", "D4", "--format", "csv"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn nc_map_then_inverse_round_trips() {
    let rows = json(&["nc", "map", "--group", "A3", "--coxeter", "1,0,2"]);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 14);
    for row in rows {
        let x = word_arg(row["noncrossing"].as_str().unwrap());
        let back = json(&["nc", "inverse", &x, "--group", "A3", "--coxeter", "1,0,2"]);
        assert_eq!(back["sortable"], row["sortable"]);
    }
}

/// `s0s1s0` becomes `0,1,0`; `e` stays `e`.
fn word_arg(w: &str) -> String {
    if w == "e" {
        return w.into();
    }
    w.split('s').filter(|p| !p.is_empty()).collect::<Vec<_>>().join(",")
}

#[test]
fn csv_has_header_and_one_row_per_object() {
    let out = coxsort(&["sortable", "list", "--group", "B2", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "element,sorting_word,descents,full_support");
    assert_eq!(lines.len(), 7);
}

#[test]
fn group_from_file_and_matrix() {
    let dir = std::env::temp_dir().join(format!("coxsort-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("h3.json");
    std::fs::write(&path, r#"{"type":"H","rank":3,"coxeter_word":[2,1,0]}"#).unwrap();
    let v = json(&["count", "--group", path.to_str().unwrap()]);
    assert_eq!(v["catalan"], 32);
    let v = json(&["degrees", "--group", r#"{"matrix":[[1,5],[5,1]]}"#]);
    assert_eq!(v["catalan"], 7);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn orient_b2() {
    let v = json(&["orient", "0", "1", "--group", "B2"]);
    assert_eq!((v["source"].as_str(), v["target"].as_str()), (Some("s0"), Some("s1")));
    let v = json(&["orient", "0", "1", "--group", "B2", "--coxeter", "1,0"]);
    assert_eq!(v["source"], "s1");
}

#[test]
fn exit_codes() {
    assert_eq!(coxsort(&["count"]).status.code(), Some(1));
    assert_eq!(coxsort(&["frobnicate", "--group", "A2"]).status.code(), Some(1));
    assert_eq!(coxsort(&["count", "--group", "Q9"]).status.code(), Some(1));
    assert_eq!(coxsort(&["count", "--group", "A2", "--coxeter", "0,0"]).status.code(), Some(1));
    assert_eq!(coxsort(&["nc", "map", "1,0", "--group", "B2"]).status.code(), Some(2));
    assert_eq!(coxsort(&["count", "--group", r#"{"matrix":[[1,null],[null,1]]}"#]).status.code(), Some(2));
    assert_eq!(coxsort(&["orient", "0", "0,1", "--group", "A2"]).status.code(), Some(1));
}
