//! End-to-end tests of the `coxshadows` binary: output formats, the cache,
//! and the exit-code protocol (0 ok, 2 usage, 3 inconclusive/capped,
//! 4 property failure).

use std::path::Path;
use std::process::{Command, Output};

fn coxshadows(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxshadows"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn info_summarizes_the_system() {
    let tmp = tempfile::tempdir().unwrap();
    let out = coxshadows(&["info", "--system", "Gtilde2"], tmp.path());
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("rank: 3"));
    assert!(text.contains("m(s1, s2) = 6"));
    assert!(text.contains("degree 2"));
}

#[test]
fn bad_system_text_is_a_usage_error() {
    let tmp = tempfile::tempdir().unwrap();
    let out = coxshadows(&["info", "--system", "no such system"], tmp.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("parse"));
}

#[test]
fn golden_dot_for_the_infinite_dihedral_automaton() {
    let tmp = tempfile::tempdir().unwrap();
    let dot_path = tmp.path().join("bh.dot");
    let out = coxshadows(
        &["automaton", "--system", "I2(inf)", "--kind", "bh", "--dot", dot_path.to_str().unwrap()],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("3 states"));
    let got = std::fs::read_to_string(&dot_path).unwrap();
    assert_eq!(got, include_str!("golden/inf_dihedral_bh.dot"));
}

#[test]
fn automaton_cache_round_trips_identically() {
    let tmp = tempfile::tempdir().unwrap();
    let cache = tmp.path().join("cache");
    let fresh_json = tmp.path().join("fresh.json");
    let cached_json = tmp.path().join("cached.json");
    let cache_arg = cache.to_str().unwrap();

    let first = coxshadows(
        &[
            "automaton",
            "--system",
            "Ctilde2",
            "--cache-dir",
            cache_arg,
            "--json",
            fresh_json.to_str().unwrap(),
        ],
        tmp.path(),
    );
    assert_eq!(first.status.code(), Some(0), "{}", stderr(&first));
    assert!(stdout(&first).contains("(built)"));

    let second = coxshadows(
        &[
            "automaton",
            "--system",
            "Ctilde2",
            "--cache-dir",
            cache_arg,
            "--json",
            cached_json.to_str().unwrap(),
        ],
        tmp.path(),
    );
    assert_eq!(second.status.code(), Some(0));
    assert!(stdout(&second).contains("(cached)"));

    let fresh = std::fs::read_to_string(&fresh_json).unwrap();
    let cached = std::fs::read_to_string(&cached_json).unwrap();
    assert_eq!(fresh, cached, "cache reload must reproduce the built automaton");
}

#[test]
fn shi_lists_every_part_even_outside_the_ball() {
    let tmp = tempfile::tempdir().unwrap();
    let parts = tmp.path().join("parts.json");
    let out = coxshadows(
        &["shi", "--system", "Gtilde2", "--ball", "12", "--out", parts.to_str().unwrap()],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("49 Shi parts"));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&parts).unwrap()).unwrap();
    assert_eq!(doc["part_count"], 49);
    let parts = doc["parts"].as_array().unwrap();
    assert_eq!(parts[0]["min"], "e");
    assert!(parts.iter().all(|p| p["size"].as_u64().is_some()));
}

#[test]
fn cones_csv_and_dot_agree_on_state_count() {
    let tmp = tempfile::tempdir().unwrap();
    let csv_path = tmp.path().join("cones.csv");
    let dot_path = tmp.path().join("cones.dot");
    let out = coxshadows(
        &[
            "cones",
            "--system",
            "Atilde2",
            "--ball",
            "8",
            "--format",
            "csv",
            "--out",
            csv_path.to_str().unwrap(),
            "--dot",
            dot_path.to_str().unwrap(),
        ],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("16 cone types"));
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert_eq!(csv.lines().count(), 17, "header plus one row per state");
    assert!(csv.starts_with("state,gate,length,size\n"));
    let dot = std::fs::read_to_string(&dot_path).unwrap();
    assert_eq!(dot.matches("shape=circle").count(), 16);
    assert!(dot.contains("label=\"e\""), "gate words label the states");
}

#[test]
fn growth_matches_the_known_series() {
    let tmp = tempfile::tempdir().unwrap();
    let out = coxshadows(&["growth", "--system", "Atilde2", "--ball", "8"], tmp.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("1, 3, 6, 12, 18, 30, 42, 66, 90"));
}

#[test]
fn verify_all_passes_on_the_infinite_dihedral() {
    let tmp = tempfile::tempdir().unwrap();
    let report = tmp.path().join("report.json");
    let out = coxshadows(
        &[
            "verify",
            "--system",
            "rank 2; m 1 2 = inf",
            "--radius",
            "8",
            "--suite",
            "all",
            "--report",
            report.to_str().unwrap(),
        ],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert!(doc["checks"].as_array().unwrap().len() > 20);
    assert!(stdout(&out).lines().filter(|l| l.starts_with("PASS")).count() > 20);
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let tmp = tempfile::tempdir().unwrap();
    let out = coxshadows(
        &["verify", "--system", "A2", "--suite", "everything"],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown suite"));
}

#[test]
fn inconclusive_verification_exits_three() {
    // At radius 12 the cone-partition cross-check of Gtilde2 needs a larger
    // probe ball than the radius allows, so the suite reports inconclusive.
    let tmp = tempfile::tempdir().unwrap();
    let out = coxshadows(
        &["verify", "--system", "Gtilde2", "--radius", "12", "--suite", "cone"],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(3), "{}", stdout(&out));
    assert!(stdout(&out).contains("INCONCLUSIVE"));
    assert!(!stdout(&out).contains("FAIL"));
}

#[test]
fn cap_exceeded_exits_three() {
    let tmp = tempfile::tempdir().unwrap();
    let out = coxshadows(
        &["roots", "--system", "triangle(3,4,5)", "--max-states", "3"],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn render_writes_svg_for_affine_rank_three_only() {
    let tmp = tempfile::tempdir().unwrap();
    let svg_path = tmp.path().join("picture.svg");
    let out = coxshadows(
        &[
            "render",
            "--system",
            "Atilde2",
            "--ball",
            "6",
            "--coloring",
            "cone",
            "--out",
            svg_path.to_str().unwrap(),
        ],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("16 parts"));
    let svg = std::fs::read_to_string(&svg_path).unwrap();
    assert!(svg.starts_with("<svg "));

    let bad = coxshadows(
        &["render", "--system", "B3", "--ball", "4", "--coloring", "shi", "--out", "x.svg"],
        tmp.path(),
    );
    assert_eq!(bad.status.code(), Some(2));
    assert!(stderr(&bad).contains("finite"));
}

#[test]
fn export_carries_words_lengths_and_inversions() {
    let tmp = tempfile::tempdir().unwrap();
    let out = coxshadows(&["export", "--system", "B2", "--ball", "8"], tmp.path());
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["count"], 8);
    let longest = doc["elements"]
        .as_array()
        .unwrap()
        .iter()
        .max_by_key(|e| e["length"].as_u64().unwrap())
        .unwrap();
    assert_eq!(longest["length"], 4);
    assert_eq!(longest["inversions"].as_array().unwrap().len(), 4);
}
