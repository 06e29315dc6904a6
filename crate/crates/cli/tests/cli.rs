use serde_json::Value;
use std::io::Write;
use std::process::{Command, Output, Stdio};

fn majill(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_majill"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

#[test]
fn feasible_six_four_is_refused_with_reason() {
    let o = majill(&["feasible", "6", "4", "--format", "json"], "");
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["possible"], false);
    assert_eq!(v["reasons"][0]["code"], "degree_bound_even_even");
}

#[test]
fn feasible_positive_and_obstructed() {
    assert_eq!(majill(&["feasible", "12", "6"], "").status.code(), Some(0));
    let o = majill(&["feasible", "12", "8", "--format", "json"], "");
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["conditions_hold"], true);
    assert_eq!(v["parity_obstruction"], true);
    assert_eq!(majill(&["feasible", "5", "3"], "").status.code(), Some(2));
}

#[test]
fn construct_pipes_into_analyze() {
    let built = majill(&["construct", "12", "6"], "");
    assert_eq!(built.status.code(), Some(0));
    let graph = stdout(&built);
    assert!(graph.starts_with("n 12\ncolors RRRRRRRBBBBB\n"));
    let report = String::from_utf8(built.stderr).unwrap();
    assert!(report.contains("validation.majority_majority: true"));

    let analyzed = majill(&["analyze", "--format", "json"], &graph);
    assert_eq!(analyzed.status.code(), Some(0));
    let v = json(&analyzed);
    assert_eq!(v["majority_majority"], true);
    assert_eq!(v["strict"], 7);
}

#[test]
fn construct_report_to_file_in_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = majill(
        &[
            "construct",
            "10",
            "6",
            "--fast",
            "--format",
            "json",
            "--report",
            path.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stderr.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["fast"], true);
    assert_eq!(v["validation"]["regular"], true);
}

#[test]
fn construct_negative_and_usage() {
    assert_eq!(majill(&["construct", "6", "4"], "").status.code(), Some(1));
    assert_eq!(majill(&["construct", "12", "8"], "").status.code(), Some(1));
    assert_eq!(majill(&["construct", "5", "3"], "").status.code(), Some(2));
    assert_eq!(
        majill(&["construct", "12", "6", "--fast"], "")
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn cycle_color_analyze_pipeline() {
    let cycle = stdout(&majill(&["gen", "cycle", "5"], ""));
    assert_eq!(cycle, "n 5\n0 1\n0 4\n1 2\n2 3\n3 4\n");
    let uncolored = majill(&["analyze"], &cycle);
    assert_eq!(uncolored.status.code(), Some(2));

    let colored = majill(&["color"], &cycle);
    assert_eq!(colored.status.code(), Some(0));
    let v = json(&majill(&["analyze", "--format", "json"], &stdout(&colored)));
    assert_eq!(v["majority_weak_majority"], true);
    assert_eq!(v["majority_majority"], false);
    assert_eq!(v["agents"].as_array().unwrap().len(), 5);
}

#[test]
fn text_and_json_agree() {
    let colored = stdout(&majill(&["gen", "complete", "4", "--seed", "3"], ""));
    let v = json(&majill(
        &["analyze", "--format", "json", "--p", "1/2", "--q", "1/2"],
        &colored,
    ));
    let text = stdout(&majill(&["analyze", "--p", "1/2", "--q", "1/2"], &colored));
    for key in [
        "strict",
        "weak_only",
        "none",
        "majority_weak_majority",
        "chromaticity",
    ] {
        let value = match &v[key] {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        assert!(text.contains(&format!("\n{key}: {value}\n")), "{key}");
    }
    assert!(text.contains(&format!("pq.q_count: {}\n", v["pq"]["q_count"])));
}

#[test]
fn deterministic_output() {
    let a = majill(&["gen", "circulant", "8", "1", "3", "--seed", "7"], "");
    let b = majill(&["gen", "circulant", "8", "1", "3", "--seed", "7"], "");
    assert_eq!(a.stdout, b.stdout);
    let w1 = majill(
        &["color", "--mode", "weak-majority", "--seed", "2"],
        &stdout(&a),
    );
    let w2 = majill(
        &["color", "--mode", "weak-majority", "--seed", "2"],
        &stdout(&a),
    );
    assert_eq!(w1.stdout, w2.stdout);
}

#[test]
fn weak_majority_mode_reaches_a_weak_majority_coloring() {
    let g = stdout(&majill(&["gen", "circulant", "9", "1", "2"], ""));
    let o = majill(
        &["color", "--mode", "weak-majority", "--format", "json"],
        &g,
    );
    assert_eq!(o.status.code(), Some(0));
    let summary: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(summary["weak_majority"], true);
}

#[test]
fn strict_mode_needs_bipartite() {
    let star = "n 4\n0 1\n0 2\n0 3\n";
    let o = majill(&["color", "--mode", "strict"], star);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("n 4\ncolors RBBB\n"));
    // a balanced proper coloring with no node to flip
    let even = stdout(&majill(&["gen", "cycle", "6"], ""));
    assert_eq!(
        majill(&["color", "--mode", "strict"], &even).status.code(),
        Some(1)
    );
    let odd = stdout(&majill(&["gen", "cycle", "5"], ""));
    assert_eq!(
        majill(&["color", "--mode", "strict"], &odd).status.code(),
        Some(1)
    );
}

#[test]
fn oracle_optimum_and_witness() {
    let k4 = stdout(&majill(&["gen", "complete", "4"], ""));
    let v = json(&majill(
        &[
            "oracle",
            "--objective",
            "max-weak-illusion",
            "--format",
            "json",
        ],
        &k4,
    ));
    assert_eq!(v["score"], 4);
    let c5 = stdout(&majill(&["gen", "cycle", "5"], ""));
    let o = majill(&["oracle", "--kind", "majority-majority"], &c5);
    assert_eq!(o.status.code(), Some(1));
    let o = majill(&["oracle", "--cap", "4"], &c5);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn model_checking() {
    let k4 = "n 4\ncolors RRBB\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";
    let o = majill(&["mc", "--formula", "GW p & GW ~p", "--node", "0"], k4);
    assert_eq!(o.status.code(), Some(0));
    let o = majill(&["mc", "--formula", "GM p", "--global"], k4);
    assert_eq!(o.status.code(), Some(1));
    let o = majill(
        &["mc", "--preset", "majority-weak-majority", "--possible"],
        k4,
    );
    assert_eq!(o.status.code(), Some(0));
    let o = majill(&["mc", "--formula", "(p & q", "--node", "0"], k4);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("position 0"));
    let o = majill(&["mc", "--formula", "p", "--node", "9"], k4);
    assert_eq!(o.status.code(), Some(2));
    let o = majill(&["mc", "--formula", "q | p", "--node", "0"], k4);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8(o.stderr).unwrap().contains("warning"));
}

#[test]
fn model_checking_with_valuation_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("val.txt");
    std::fs::write(&path, "# triangle, everyone p\n0 p\n1 p\n2 p\n").unwrap();
    let tri = "n 3\n0 1\n0 2\n1 2\n";
    let v = path.to_str().unwrap();
    assert_eq!(
        majill(
            &["mc", "--valuation", v, "--formula", "<>1 p", "--node", "0"],
            tri
        )
        .status
        .code(),
        Some(0)
    );
    assert_eq!(
        majill(
            &["mc", "--valuation", v, "--formula", "<>2 p", "--node", "0"],
            tri
        )
        .status
        .code(),
        Some(1)
    );
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(majill(&["analyze"], "n x\n").status.code(), Some(2));
    assert_eq!(
        majill(&["analyze", "--p", "1/2"], "").status.code(),
        Some(2)
    );
    assert_eq!(majill(&["gen", "cycle", "2"], "").status.code(), Some(2));
    assert_eq!(
        majill(&["color", "/no/such/file"], "").status.code(),
        Some(2)
    );
    assert_eq!(
        majill(&["mc", "--preset", "nope", "--global"], "n 1\ncolors R\n")
            .status
            .code(),
        Some(2)
    );
}
