use std::path::PathBuf;
use std::process::Command;

use perdiv::cli::{run, strip_timing};
use serde_json::Value;

fn problem(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "problems", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn perdiv(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_perdiv")).args(args).output().unwrap();
    let json = serde_json::from_slice(&out.stdout).unwrap();
    (out.status.code().unwrap(), json)
}

#[test]
fn exit_codes() {
    assert_eq!(perdiv(&["check", &problem("heat.json")]).0, 0);
    assert_eq!(perdiv(&["check", &problem("wave.json")]).0, 0);
    let (code, v) = perdiv(&["check", &problem("degenerate.json")]);
    assert_eq!(code, 3);
    assert_eq!(v["result"]["verdict"], "NecessaryConditionFails");
    let (code, v) = perdiv(&["check", &problem("bad_operator.json")]);
    assert_eq!(code, 1);
    assert!(v["error"]["message"].is_string());
    assert_eq!(perdiv(&["check", "/nonexistent.json"]).0, 1);
    assert_eq!(perdiv(&["liouville", "--k-max", "9"]).0, 1);
}

#[test]
fn roots_report() {
    let (code, v) = perdiv(&["roots", &problem("wave.json"), "--xi", "3,4"]);
    assert_eq!(code, 0);
    let roots = v["result"]["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 2);
    assert!(roots.iter().all(|r| r["on_axis"] == true));
    let (code, v) = perdiv(&["roots", &problem("heat.json"), "--xi", "-1,2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["roots"][0]["re"], -5.0);
    assert!(!v.to_string().contains("-0.0"));
}

#[test]
fn solve_writes_csv() {
    let dir = std::env::temp_dir().join(format!("perdiv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("heat.csv");
    let (code, v) = perdiv(&["solve", &problem("heat.json"), "--out", csv.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["max_residual"], 0.0);
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,x1,x2,re,im"));
    assert!(lines.count() > 100);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_independent_of_jobs() {
    for cmd in ["check", "solve"] {
        let p = problem("wave.json");
        let one = run(["perdiv", "--jobs", "1", cmd, p.as_str()]);
        let four = run(["perdiv", "--jobs", "4", cmd, p.as_str()]);
        assert_eq!(one.0, four.0);
        assert_eq!(strip_timing(&one.1), strip_timing(&four.1));
    }
}
