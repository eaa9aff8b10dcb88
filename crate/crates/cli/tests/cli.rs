//! End-to-end tests of the command-line interface.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_subshift-lab")
}

fn tmp_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("subshift-lab-cli").join(name);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn fibonacci_config(dir: &std::path::Path, depth: usize) -> PathBuf {
    let path = dir.join("fib.json");
    let text = format!(
        r#"{{"subshift": {{"type": "substitution", "rules": {{"0": "1", "1": "10"}}, "seed": "1"}},
            "depth": {depth},
            "analyses": ["structure", "powers"]}}"#
    );
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn analyze_writes_report_and_exits_zero() {
    let dir = tmp_dir("analyze");
    let config = fibonacci_config(&dir, 200);
    let out = dir.join("report.json");
    let output = Command::new(bin())
        .args(["analyze"])
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert!(output.status.success(), "{output:?}");
    let report: serde_json::Value =
        serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(report["provenance"]["certified_depth"], 200);
    assert_eq!(report["powers"]["verdict"], "bounded");
    assert!(report["metrics"].is_null());
}

#[test]
fn empty_config_exits_one_with_pointer() {
    let dir = tmp_dir("empty");
    let config = dir.join("empty.json");
    std::fs::write(&config, "{}").unwrap();
    let output = Command::new(bin())
        .args(["analyze"])
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("subshift"), "stderr: {stderr}");
}

#[test]
fn unknown_key_is_rejected_with_its_path() {
    let dir = tmp_dir("unknown-key");
    let config = dir.join("bad.json");
    std::fs::write(
        &config,
        r#"{"subshift": {"type": "sample", "text": "abab", "depth": 1},
           "analyses": ["structure"], "typo_key": true}"#,
    )
    .unwrap();
    let output = Command::new(bin())
        .args(["analyze"])
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("typo_key"), "stderr: {stderr}");
}

#[test]
fn graph_export_is_deterministic_and_covers_cylinders() {
    let dir = tmp_dir("graph");
    let config = fibonacci_config(&dir, 60);
    let render = |out: &PathBuf| {
        let output = Command::new(bin())
            .args(["graph"])
            .arg(&config)
            .args(["--kind", "priv", "--depth", "3", "--out"])
            .arg(out)
            .output()
            .unwrap();
        assert!(output.status.success(), "{output:?}");
        std::fs::read(out).unwrap()
    };
    let first = render(&dir.join("g1.dot"));
    let second = render(&dir.join("g2.dot"));
    assert_eq!(first, second, "same config must give byte-identical DOT");
    // All privileged cylinders up to depth 3 appear, possibly τ-merged into
    // a shared vertex (labels carry the shortest defining word, comments the
    // rest).
    let text = String::from_utf8(first).unwrap();
    let tokens: std::collections::BTreeSet<&str> = text
        .split(|c: char| c.is_whitespace() || "\"[]=;".contains(c))
        .collect();
    for cylinder in ["ε", "0", "1", "11", "101", "010"] {
        assert!(tokens.contains(cylinder), "missing cylinder {cylinder} in:\n{text}");
    }
}

#[test]
fn zeta_scan_matches_direct_summation() {
    // Golden Sturmian: one right-special word per length with a = 1, so
    // ζ_1(s) at truncation N is Σ_{n<=N} (1/(n+1))^s.
    let dir = tmp_dir("zeta");
    let config = dir.join("sturmian.json");
    std::fs::write(
        &config,
        r#"{"subshift": {"type": "sturmian", "cf": [1]}, "depth": 600,
           "analyses": ["structure"]}"#,
    )
    .unwrap();
    let out = dir.join("z.csv");
    let output = Command::new(bin())
        .args(["zeta"])
        .arg(&config)
        .args(["--family", "zeta1", "--s", "1.5,2", "--n", "500", "--out"])
        .arg(&out)
        .output()
        .unwrap();
    assert!(output.status.success(), "{output:?}");
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "family,k,s,N,partial_sum,diagnostic");
    for (line, s) in lines.zip([1.5f64, 2.0]) {
        let sum: f64 = line.split(',').nth(4).unwrap().parse().unwrap();
        let direct: f64 = (0..=500).map(|n| (1.0 / (n as f64 + 1.0)).powf(s)).sum();
        assert!((sum - direct).abs() < 1e-12, "s = {s}: {sum} vs {direct}");
    }
}

#[test]
fn zeta_identity_flag_appends_column() {
    let dir = tmp_dir("zeta-identity");
    let config = fibonacci_config(&dir, 200);
    let out = dir.join("zd.csv");
    let output = Command::new(bin())
        .args(["zeta"])
        .arg(&config)
        .args([
            "--family",
            "zeta_d",
            "--s",
            "1.5",
            "--n",
            "120",
            "--check-identity",
            "--out",
        ])
        .arg(&out)
        .output()
        .unwrap();
    assert!(output.status.success(), "{output:?}");
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "family,k,s,N,partial_sum,diagnostic,identity_ok"
    );
    assert!(lines.next().unwrap().ends_with(",true"));
}

#[test]
fn empty_s_grid_exits_one() {
    let dir = tmp_dir("zeta-empty-grid");
    let config = fibonacci_config(&dir, 100);
    let output = Command::new(bin())
        .args(["zeta"])
        .arg(&config)
        .args(["--family", "zeta1", "--s", "", "--n", "50"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn strict_flag_turns_inconclusive_into_exit_two() {
    // A tiny depth leaves the verdict inconclusive.
    let dir = tmp_dir("strict");
    let config = dir.join("tiny.json");
    std::fs::write(
        &config,
        r#"{"subshift": {"type": "substitution", "rules": {"0": "1", "1": "10"}, "seed": "1"},
           "depth": 24, "analyses": ["powers"]}"#,
    )
    .unwrap();
    let out = dir.join("report.json");
    let output = Command::new(bin())
        .args(["analyze"])
        .arg(&config)
        .args(["--strict", "--out"])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2), "{output:?}");
}
