use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flag-pieces"))
        .args(args)
        .env("FLAG_PIECES_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn cache_files(dir: &Path) -> Vec<Value> {
    let mut files: Vec<_> = std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    files.iter().map(|p| serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()).collect()
}

#[test]
fn count_writes_a_cache_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["count", "--type", "A1", "--q", "3", "--class", "2"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let files = cache_files(dir.path());
    assert_eq!(files.len(), 1);
    assert_eq!(files[0]["type"], "A1");
    assert_eq!(files[0]["variant"], "std");
    assert_eq!(files[0]["counts"], serde_json::json!({"e": 1, "1": 3}));
}

#[test]
fn environment_variable_and_flag_choose_the_cache() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let flag = flag_dir.path().to_str().unwrap();
    let out = run(&["count", "--type", "A1", "--q", "5", "--cache-dir", flag], env_dir.path());
    assert!(out.status.success());
    assert_eq!(cache_files(env_dir.path()).len(), 0);
    assert_eq!(cache_files(flag_dir.path()).len(), 2);
}

#[test]
fn large_rank_three_prime_is_refused_with_an_estimate() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["verify", "--type", "C3", "--q", "11"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("C3 at q = 11") && err.contains("flags per pass"), "{err}");
    assert!(err.contains("--allow-large-q"));
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    for args in [&["frobnicate"][..], &["count", "--type", "A2", "--q", "4"], &["count", "--type", "E8", "--q", "3"]] {
        assert_eq!(run(args, dir.path()).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn derived_suite_passes_and_formats_agree() {
    let dir = tempfile::tempdir().unwrap();
    let saved = dir.path().join("report.json");
    let args = ["verify", "--suite", "paper", "--types", "A1,A2,B2", "--derive", "--format", "json"];
    let cold = run(&[&args[..], &["--out", saved.to_str().unwrap()]].concat(), &dir.path().join("cache"));
    assert_eq!(cold.status.code(), Some(0), "{}", String::from_utf8_lossy(&cold.stdout));
    let report: Value = serde_json::from_slice(&cold.stdout).unwrap();
    let checks = report["checks"].as_array().unwrap();
    assert!(checks.len() > 100);
    for c in checks {
        let keys: Vec<&String> = c.as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), 6, "{c}");
        assert!(["derived", "sampled", "data"].contains(&c["grade"].as_str().unwrap()));
        assert!(["pass", "fail", "skipped"].contains(&c["status"].as_str().unwrap()));
        for k in ["id", "expected", "actual", "paper_ref"] {
            assert!(c[k].is_string());
        }
    }
    assert!(report["green_traces"]["A1/q3/2/std"].is_object());

    let warm = run(&args, &dir.path().join("cache"));
    assert_eq!(warm.stdout, cold.stdout, "warm cache changes the report");

    let md = run(&["report", saved.to_str().unwrap()], dir.path());
    assert_eq!(md.status.code(), Some(0));
    let md = String::from_utf8(md.stdout).unwrap();
    for c in checks {
        let row = format!("| {} | {} | {} |", c["id"].as_str().unwrap().replace('|', "\\|"), c["grade"].as_str().unwrap(), c["status"].as_str().unwrap());
        assert!(md.contains(&row), "{row}");
    }
}

#[test]
fn data_check_covers_every_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["data-check", "--format", "json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    let ids: Vec<&str> = report["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    for t in ["A1", "A2", "B2", "G2", "B3", "C3"] {
        assert!(ids.contains(&format!("data-check/{t}/S-partition").as_str()), "{t}");
    }
}

#[test]
fn interpolate_and_solve_traces_print_results() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["interpolate", "--type", "A2", "--class", "2,1", "--format", "json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v[0]["xi"]["(1)"], "2u + 1");
    assert_eq!(v[0]["xi"]["(s1)"], "u^2");
    assert_eq!(v[0]["xi"]["(s1s2)"], "0");

    let out = run(&["solve-traces", "--type", "A1", "--q", "3", "--class", "2", "--format", "json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["green_traces"]["A1/q3/2/std"], serde_json::json!({"[2]": "1", "[1,1]": "0"}));

    let out = run(&["interpolate", "--type", "A2", "--qs", "3,5"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}
