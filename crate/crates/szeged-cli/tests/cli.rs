//! End-to-end tests of the `szeged` binary: parsing, output formats, exit
//! codes, and the table cache.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn szeged(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_szeged"))
        .args(args)
        .env_remove("SZEGED_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write(path: &Path, text: &str) {
    fs::write(path, text).unwrap();
}

#[test]
fn compute_paths_and_branches() {
    let dir = tempfile::tempdir().unwrap();
    let p4 = dir.path().join("p4.txt");
    write(&p4, "0 1\n1 2\n2 3\n");
    let out = szeged(&["compute", p4.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "34");
    let out = szeged(&["compute", p4.to_str().unwrap(), "--index", "sz"]);
    assert_eq!(stdout(&out).trim(), "10");

    let edge = dir.path().join("edge.txt");
    write(&edge, "0 1\n");
    let out = szeged(&["compute", edge.to_str().unwrap()]);
    assert_eq!(stdout(&out).trim(), "2");

    // the same P4 as a rooted branch shape: root children of sizes 2 and 1
    let shape = dir.path().join("shape.txt");
    write(&shape, "((())())\n");
    let out = szeged(&["compute", shape.to_str().unwrap(), "--format", "branch"]);
    assert_eq!(stdout(&out).trim(), "34");
}

#[test]
fn compute_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    write(&bad, "0 1\n1 2\n2 0\n"); // cycle, not a tree: fine for sz/wsz
    let out = szeged(&["compute", bad.to_str().unwrap(), "--index", "sz"]);
    assert!(out.status.success());

    let garbled = dir.path().join("garbled.txt");
    write(&garbled, "zero one\n");
    let out = szeged(&["compute", garbled.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error:"));

    let out = szeged(&["compute", dir.path().join("missing.txt").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_1_and_help_exits_0() {
    let out = szeged(&["tables", "--branches", "--bogus-flag"]);
    assert_eq!(out.status.code(), Some(1));
    let out = szeged(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn overflow_exits_2() {
    let out = szeged(&["optimal-branch", "--size", "80", "--n", "5000000000000000000"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("overflow"));
}

#[test]
fn optimal_tree_text_json_and_dot() {
    let out = szeged(&["optimal-tree", "--n", "3"]);
    assert!(stdout(&out).contains("children: 2"));

    let out = szeged(&["optimal-tree", "--n", "16", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["schemaVersion"], 1);
    assert_eq!(v["n"], 16);
    assert_eq!(v["childCount"], 3);
    assert_eq!(v["children"].as_array(), None); // field is childrenSizes
    assert_eq!(
        v["childrenSizes"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect::<Vec<_>>(),
        vec![5, 5, 5]
    );

    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("tree.dot");
    let out = szeged(&["optimal-tree", "--n", "10", "--dot", dot.to_str().unwrap()]);
    assert!(out.status.success());
    let text = fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("graph tree {"));
    assert_eq!(text.matches("--").count(), 9); // n - 1 edges
}

#[test]
fn optimal_branch_matches_published_values() {
    let out = szeged(&["optimal-branch", "--size", "4", "--n", "10", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["cost"], "215");
    assert_eq!(
        v["childrenSizes"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect::<Vec<_>>(),
        vec![1, 2]
    );
}

#[test]
fn branch_table_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let args = |json: &Path| {
        vec![
            "tables".to_string(),
            "--branches".into(),
            "--max-size".into(),
            "12".into(),
            "--n-max".into(),
            "60".into(),
            "--cache".into(),
            cache.to_str().unwrap().into(),
            "--json".into(),
            json.to_str().unwrap().into(),
        ]
    };
    let j1 = dir.path().join("first.json");
    let out = szeged(&args(&j1).iter().map(String::as_str).collect::<Vec<_>>());
    assert!(out.status.success());
    let cache_file = cache.join("thresholds-12-60.json");
    assert!(cache_file.exists());

    let j2 = dir.path().join("second.json");
    let out2 = szeged(&args(&j2).iter().map(String::as_str).collect::<Vec<_>>());
    assert!(out2.status.success());
    assert_eq!(stdout(&out), stdout(&out2));
    assert_eq!(fs::read_to_string(&j1).unwrap(), fs::read_to_string(&j2).unwrap());

    // a corrupted cache is ignored and recomputed, not trusted
    fs::write(&cache_file, "{ not json").unwrap();
    let j3 = dir.path().join("third.json");
    let out3 = szeged(&args(&j3).iter().map(String::as_str).collect::<Vec<_>>());
    assert!(out3.status.success());
    assert_eq!(fs::read_to_string(&j1).unwrap(), fs::read_to_string(&j3).unwrap());
}

#[test]
fn verify_smoke_run_passes() {
    // small bounds keep this a quick end-to-end sanity pass of the oracle path
    let out = szeged(&["verify", "--tree-max", "8", "--branch-max", "6"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("ok:"));
}

#[test]
fn conjectures_smoke_run() {
    let out = szeged(&["conjectures", "--max", "20"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("max-degree"));
    assert!(!text.contains("FAIL"));
}
