//! End-to-end runs of the `circulant-lab` binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/fixtures");

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_circulant-lab"))
        .args(args)
        .env_remove("CIRCULANT_LAB_CAP")
        .output()
        .expect("binary runs")
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("each line is JSON"))
        .collect()
}

fn fixture(name: &str) -> String {
    format!("{FIXTURES}/{name}.txt")
}

#[test]
fn construct_odd_reports() {
    for (k, n) in [("1", 6), ("3", 54), ("5", 150)] {
        let out = lab(&["construct-odd", "--k", k]);
        assert_eq!(out.status.code(), Some(0), "k={k}");
        let report = &json_lines(&out)[0];
        assert_eq!(report["n"], n);
        assert_eq!(report["pass"], true);
        assert_eq!(report["verification"]["witness_orbits"], k.parse::<u64>().unwrap());
        assert!(report["graph"].as_str().unwrap().starts_with(&format!("{n} ")));
    }
}

#[test]
fn construct_even_reports() {
    let out = lab(&["construct-even", "--m", "1", "--p", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let report = &json_lines(&out)[0];
    assert_eq!((report["n"].as_u64(), report["k"].as_u64()), (Some(14), Some(2)));
    assert_eq!(report["verification"]["profile"]["tutte_t"], 3);
    assert_eq!(report["verification"]["profile"]["aut_order"], 336);

    let out = lab(&["construct-even", "--m", "2", "--p", "7"]);
    let report = &json_lines(&out)[0];
    assert_eq!((report["n"].as_u64(), report["k"].as_u64()), (Some(56), Some(4)));

    let out = lab(&["construct-even", "--m", "3", "--p", "7"]);
    let report = &json_lines(&out)[0];
    assert_eq!((report["n"].as_u64(), report["k"].as_u64()), (Some(42), Some(6)));
    assert_eq!(report["c_order"], 7);
}

#[test]
fn construct_writes_graph_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("heawood.g6");
    let out = lab(&[
        "construct-even",
        "--m",
        "1",
        "--p",
        "7",
        "--format",
        "graph6",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json_lines(&out)[0].get("graph").is_none());
    let text = std::fs::read_to_string(&path).unwrap();
    let g = circulant_core::parse_graph6(text.trim()).unwrap();
    assert_eq!(g.n(), 14);
}

#[test]
fn bad_parameters_exit_with_two() {
    for args in [
        &["construct-odd", "--k", "4"][..],
        &["construct-odd", "--k", "0"],
        &["construct-even", "--m", "1", "--p", "5"],
        &["construct-even", "--m", "7", "--p", "7"],
        &["construct-even", "--m", "1", "--p", "9"],
        &["no-such-command"],
    ] {
        let out = lab(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let out = lab(&["construct-odd", "--k", "4"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("odd"));
}

#[test]
fn analyze_fixtures() {
    let out = lab(&["analyze", &fixture("k4")]);
    let r = &json_lines(&out)[0];
    assert_eq!(r["profile"]["aut_order"], 24);
    assert_eq!(r["profile"]["tutte_t"], 1);
    assert_eq!(r["spectrum"]["spectrum"], serde_json::json!([1, 2]));

    let out = lab(&["analyze", &fixture("petersen"), "--include-trivial-k"]);
    let r = &json_lines(&out)[0];
    assert_eq!(r["profile"]["aut_order"], 120);
    assert_eq!(r["spectrum"]["spectrum"], serde_json::json!([2, 10]));
    assert_eq!(r["spectrum"]["findings"], serde_json::json!([]));

    let out = lab(&["analyze", &fixture("heawood")]);
    let r = &json_lines(&out)[0];
    assert_eq!(r["profile"]["tutte_t"], 3);
    assert_eq!(r["profile"]["stabiliser_order"], 24);
}

#[test]
fn analyze_is_deterministic() {
    let a = lab(&["analyze", &fixture("pappus"), "--include-trivial-k"]);
    let b = lab(&["analyze", &fixture("pappus"), "--include-trivial-k"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}

#[test]
fn analyze_errors_and_non_cubic_input() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "3 1\n0 3\n").unwrap();
    let out = lab(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("out of range"));

    let missing = dir.path().join("missing.txt");
    assert_eq!(lab(&["analyze", missing.to_str().unwrap()]).status.code(), Some(2));

    let path = dir.path().join("p4.txt");
    std::fs::write(&path, "4 3\n0 1\n1 2\n2 3\n").unwrap();
    let out = lab(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json_lines(&out)[0];
    assert_eq!(r["cubic"], false);
    assert!(r["profile"]["tutte_t"].is_null());
}

#[test]
fn spectrum_command_and_cap() {
    let out = lab(&["spectrum", &fixture("k33"), "--include-trivial-k"]);
    let r = &json_lines(&out)[0];
    assert_eq!(r["spectrum"], serde_json::json!([1, 2, 3, 6]));
    assert_eq!(r["witnesses"]["6"], "()");
    assert_eq!(r["findings"][1]["bound"], 54);

    let out = lab(&["spectrum", &fixture("k33"), "--cap", "10"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));

    let out = Command::new(env!("CARGO_BIN_EXE_circulant-lab"))
        .args(["spectrum", &fixture("k33")])
        .env("CIRCULANT_LAB_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn analyze_graph6_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("two.g6");
    std::fs::write(&path, ">>graph6<<C~\nA_\n").unwrap();
    let out = lab(&["analyze", path.to_str().unwrap()]);
    let records = json_lines(&out);
    assert_eq!(records.len(), 2);
    assert_eq!(records[0]["profile"]["n"], 4);
    assert_eq!(records[1]["profile"]["n"], 2);
    assert_eq!(records[1]["line"], 2);
}

fn write_fixtures(dir: &Path) {
    for entry in std::fs::read_dir(FIXTURES).unwrap() {
        let p = entry.unwrap().path();
        std::fs::copy(&p, dir.join(p.file_name().unwrap())).unwrap();
    }
}

#[test]
fn scan_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    write_fixtures(dir.path());
    std::fs::write(dir.path().join("zz-broken.txt"), "4 2\n0 1\n").unwrap();
    std::fs::write(dir.path().join("zz-path.txt"), "3 2\n0 1\n1 2\n").unwrap();
    let out = lab(&["scan", dir.path().to_str().unwrap(), "--bound-check", "--jobs", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let lines = json_lines(&out);
    let summary = &lines.last().unwrap()["summary"];
    assert_eq!(summary["violations"], 0);
    assert_eq!(summary["analyzed"], 6);
    assert_eq!(summary["errors"], 1);
    assert_eq!(summary["skipped"], 1);
    let sources: Vec<&str> = lines[..lines.len() - 1]
        .iter()
        .map(|r| r["source"].as_str().unwrap())
        .collect();
    let mut sorted = sources.clone();
    sorted.sort();
    assert_eq!(sources, sorted);
    let path_record = lines
        .iter()
        .find(|r| r["source"].as_str().is_some_and(|s| s.ends_with("zz-path.txt")))
        .unwrap();
    assert_eq!(path_record["skip"], "not cubic");
    let k33 = lines
        .iter()
        .find(|r| r["source"].as_str().is_some_and(|s| s.ends_with("k33.txt")))
        .unwrap();
    assert_eq!(k33["findings"][0]["at_bound"], true);
    assert_eq!(k33["quotient"]["is_regular_cover"], false);
}

#[test]
fn scan_is_deterministic_across_job_counts() {
    let dir = tempfile::tempdir().unwrap();
    write_fixtures(dir.path());
    let d = dir.path().to_str().unwrap();
    let a = lab(&["scan", d, "--bound-check", "--jobs", "1"]);
    let b = lab(&["scan", d, "--bound-check", "--jobs", "4"]);
    assert_eq!(a.stdout, b.stdout);
    let timed = lab(&["scan", d, "--timings"]);
    assert!(json_lines(&timed)[0]["elapsed_ms"].is_u64());
    assert!(json_lines(&a)[0].get("elapsed_ms").is_none());
}

#[test]
fn scan_empty_and_missing_directories() {
    let dir = tempfile::tempdir().unwrap();
    let out = lab(&["scan", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0]["summary"]["graphs"], 0);

    let missing = dir.path().join("nope");
    assert_eq!(lab(&["scan", missing.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn scan_omits_findings_for_non_arc_transitive_graphs() {
    // the triangular prism is cubic and vertex-transitive but not arc-transitive
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("prism.txt"),
        "6 9\n0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n0 3\n1 4\n2 5\n",
    )
    .unwrap();
    let out = lab(&["scan", dir.path().to_str().unwrap(), "--bound-check"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json_lines(&out)[0];
    assert_eq!(r["arc_transitive"], false);
    assert!(r.get("findings").is_none());
}
