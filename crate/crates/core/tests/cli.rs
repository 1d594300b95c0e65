//! The command-line surface: output formats, exit codes and configuration.

use std::process::Command;

use cnslab::cli::{parse_args, run_args, RunConfig};
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cnslab"))
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = run_args(std::iter::once("cnslab").chain(args.iter().copied()).chain(["--json"]));
    (out.code, serde_json::from_str(&out.stdout).expect("valid JSON"))
}

#[test]
fn json_reports_have_the_fixed_top_level_shape() {
    let out = run_args(["cnslab", "sigma", "--p", "5", "--set", "1", "--json"]);
    let at = |k: &str| out.stdout.find(&format!("\"{k}\"")).unwrap();
    assert!(at("command") < at("params") && at("params") < at("results"));
    assert!(at("results") < at("violations") && at("violations") < at("timing"));
    let commands: [&[&str]; 7] = [
        &["sumset", "--p", "7", "--a", "1,2", "--b", "3,5"],
        &["hfold", "--p", "11", "--set", "1,2,3,4", "--h", "2"],
        &["sigma", "--p", "11", "--set", "1,2,3", "--alpha", "1"],
        &["coeff", "dsh", "--p", "11", "--d", "3", "--h", "2"],
        &["verify", "cd", "--p", "5", "--exhaustive"],
        &["audit", "dsh", "--p", "11", "--set", "1,2,3,4,5", "--h", "2"],
        &["conjecture", "pairs", "--limit", "100"],
    ];
    for cmd in commands {
        let (code, doc) = json(cmd);
        assert_eq!(code, 0, "{cmd:?}");
        let mut keys: Vec<&str> = doc.as_object().unwrap().keys().map(String::as_str).collect();
        keys.sort_unstable();
        assert_eq!(keys, ["command", "params", "results", "timing", "violations"], "{cmd:?}");
        assert!(doc["violations"].as_array().unwrap().is_empty());
    }
}

#[test]
fn sumset_example() {
    let (_, doc) = json(&["sumset", "--p", "7", "--a", "1,2", "--b", "3,5"]);
    assert_eq!(doc["results"]["set"], serde_json::json!([0, 4, 5, 6]));
    let (_, doc) = json(&["sumset", "--p", "7", "--a", "1,2", "--b", "1,2", "--restricted"]);
    assert_eq!(doc["results"]["set"], serde_json::json!([3]));
}

#[test]
fn negative_elements_are_reduced() {
    let (code, doc) = json(&["sigma", "--p", "7", "--set", "-1,2"]);
    assert_eq!(code, 0);
    assert_eq!(doc["results"]["a"], serde_json::json!([2, 6]));
    assert_eq!(doc["results"]["set"], serde_json::json!([0, 1, 2, 6]));
}

#[test]
fn coeff_agrees_across_methods() {
    let (code, doc) = json(&["coeff", "main", "--p", "7", "--d", "2", "--alpha", "1"]);
    assert_eq!(code, 0);
    let methods = doc["results"]["methods"].as_object().unwrap();
    assert_eq!(methods.len(), 4);
    assert!(methods.values().all(|v| v == 2));
}

#[test]
fn csv_has_a_header_and_one_row_per_method() {
    let out = run_args(["cnslab", "coeff", "cd", "--p", "7", "--n", "2", "--m", "2", "--csv"]);
    assert_eq!(out.code, 0);
    let mut rdr = csv::Reader::from_reader(out.stdout.as_bytes());
    assert_eq!(rdr.headers().unwrap(), vec!["method", "value", "note"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows[0].get(0), Some("full_sum"));
    assert!(rows.iter().filter(|r| r.get(0) != Some("census")).all(|r| r.get(1) == Some("2")));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| bin().args(args).output().unwrap().status.code().unwrap();
    assert_eq!(code(&["sumset", "--p", "7", "--a", "1", "--b", "2"]), 0);
    assert_eq!(code(&["sumset", "--p", "8", "--a", "1", "--b", "2"]), 2);
    assert_eq!(code(&["sumset", "--p", "7", "--a", "1,8", "--b", "2"]), 2);
    assert_eq!(code(&["nonsense"]), 2);
    assert_eq!(code(&["verify", "cd", "--p", "7"]), 2);
    assert_eq!(code(&["coeff", "dsh", "--p", "11", "--d", "3", "--h", "0"]), 2);
    assert_eq!(code(&["--help"]), 0);
    // the cover must have exactly the size the bound allows
    assert_eq!(
        code(&["audit", "dsh", "--p", "11", "--set", "1,2,3", "--h", "2", "--cover", "3,4,5"]),
        2
    );
    assert_eq!(
        code(&["audit", "dsh", "--p", "11", "--set", "1,2,3", "--h", "2", "--cover", "3,4"]),
        0
    );
    // a known exception to the double-bound estimate
    assert_eq!(code(&["conjecture", "search", "--p", "13", "--exhaustive"]), 1);
}

#[test]
fn max_grid_reads_the_environment() {
    let out = bin()
        .args(["coeff", "main", "--p", "11", "--d", "5", "--alpha", "2", "--method", "sum", "--json"])
        .env("CNSLAB_MAX_GRID", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("grid"));
    let out = bin()
        .args(["coeff", "main", "--p", "11", "--d", "5", "--alpha", "2", "--method", "sum", "--json"])
        .env("CNSLAB_MAX_GRID", "10")
        .args(["--max-grid", "10000000"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn wall_time_only_with_timing_flag() {
    let (_, doc) = json(&["verify", "dsh", "--p", "7", "--exhaustive"]);
    assert!(doc["timing"].get("wall_ms").is_none());
    assert_eq!(doc["timing"]["sets_checked"], 128);
    let (_, doc) = json(&["verify", "dsh", "--p", "7", "--exhaustive", "--timing"]);
    assert!(doc["timing"]["wall_ms"].is_number());
}

#[test]
fn run_config_round_trips_through_json() {
    for argv in [
        vec!["cnslab", "verify", "main", "--p", "101", "--samples", "50", "--seed", "9", "--workers", "2"],
        vec!["cnslab", "conjecture", "family", "--k", "5", "--p", "11", "--csv"],
        vec!["cnslab", "audit", "cd", "--p", "7", "--a", "1,2", "--b", "3,-5"],
    ] {
        let config = parse_args(argv).unwrap();
        let text = serde_json::to_string(&config).unwrap();
        let back: RunConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}

#[test]
fn text_output_is_a_table() {
    let out = run_args(["cnslab", "conjecture", "family", "--k", "5", "--p", "11"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.lines().count() > 3);
    assert!(out.stdout.contains("alpha"));
}
