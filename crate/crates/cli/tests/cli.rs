use std::fs;
use std::process::{Command, Output};

use rayleigh_kit::matroid::io::load_matroid;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rayleigh-kit")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn delta_of_k4() {
    let o = run(&["delta", "K4", "1", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "+1 * y_3^2 y_4^2 -2 * y_3 y_4 y_5 y_6 +1 * y_5^2 y_6^2\n");
    let o = run(&["delta", "K4", "--pairs", "1,2"]);
    assert_eq!(stdout(&o), "+1 * y_3^2 y_4^2 -2 * y_3 y_4 y_5 y_6 +1 * y_5^2 y_6^2\n");
}

#[test]
fn verify_every_pair_of_k4() {
    let o = run(&["verify", "fig3.IV"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.contains(": verified")).count(), 15);
    assert!(out.ends_with("15 pairs: 15 verified, 0 failed, 0 unverified\n"));
}

#[test]
fn verify_rank_two_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("u24.json");
    fs::write(
        &path,
        r#"{"elements": ["a", "b", "c", "d"], "rank": 2,
            "bases": [["a","b"],["a","c"],["a","d"],["b","c"],["b","d"],["c","d"]]}"#,
    )
    .unwrap();
    let o = run(&["verify", path.to_str().unwrap(), "--pairs", "a,b"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("{a,b}: verified [rank-at-most-two]"));
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, "{\"elements\": [").unwrap();
    assert_eq!(run(&["verify", path.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["verify", "no-such-matroid"]).status.code(), Some(2));
    assert_eq!(run(&["delta", "K4", "1", "9"]).status.code(), Some(2));
    assert_eq!(run(&["delta", "K4", "--pairs", "1"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn rank_four_falls_back_to_sampling() {
    let o = run(&["verify", "U_4_6", "--pairs", "1,2", "--samples", "50"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("U_4_6 {1,2}: unverified (rank > 3): no negative point found in 50 samples"));
    // The certificate itself is undefined there.
    assert_eq!(run(&["certificate", "U_4_6", "--pairs", "1,2"]).status.code(), Some(2));
}

#[test]
fn sample_uniform() {
    let o = run(&["sample", "U_3_4", "--seed", "1", "--samples", "1000"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("U_3_4: 6000/6000 checks passed (100.00%) over 1000 samples, seed 1"));
}

#[test]
fn certificate_json() {
    let o = run(&["certificate", "K4", "--pairs", "1,2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "rayleigh-kit/1");
    let c = &v["certificates"][0];
    assert_eq!(c["pair"], serde_json::json!(["1", "2"]));
    assert_eq!(c["kind"], "ansatz");
    assert_eq!(c["verdict"], true);
    assert_eq!(c["delta"], "+1 * y_3^2 y_4^2 -2 * y_3 y_4 y_5 y_6 +1 * y_5^2 y_6^2");
    assert_eq!(c["square_generators"].as_array().unwrap().len(), 4);
}

#[test]
fn enumerate_writes_loadable_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["enumerate", "6", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("n=6: 9 classes\n"));
    let mut names: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    names.sort();
    assert_eq!(names.len(), 9);
    for p in names {
        let m = load_matroid(&p).unwrap();
        assert_eq!((m.len(), m.rank()), (6, 3));
    }
}

#[test]
fn jobs_from_environment() {
    let serial = run(&["verify", "rank3:6", "--jobs", "1"]);
    let o = Command::new(env!("CARGO_BIN_EXE_rayleigh-kit"))
        .args(["verify", "rank3:6"])
        .env("RAYLEIGH_KIT_JOBS", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(o.stdout, serial.stdout);
    assert_eq!(run(&["verify", "K4", "--jobs", "0"]).status.code(), Some(2));
}

#[test]
fn tables_json() {
    let o = run(&["tables", "--format", "json", "--max-ambient", "6"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let tables = v["tables"].as_array().unwrap();
    assert_eq!(tables.len(), 3);
    let rows: usize = tables.iter().map(|t| t["rows"].as_array().unwrap().len()).sum();
    assert_eq!(rows, 23);
    assert_eq!(run(&["tables", "--max-ambient", "9"]).status.code(), Some(2));
}
