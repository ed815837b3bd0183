use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn qwalk(verb: &str, config: Option<&str>, dir: &Path, extra: &[&str]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qwalk"));
    cmd.arg(verb).arg("--out").arg(dir.join("out"));
    if let Some(text) = config {
        let path = dir.join("config.json");
        std::fs::write(&path, text).unwrap();
        cmd.arg("--config").arg(path);
    }
    cmd.args(extra).output().unwrap()
}

fn read_csv(path: &Path) -> Vec<Vec<String>> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn prob_map(path: &Path) -> Vec<(i64, f64)> {
    read_csv(path)
        .into_iter()
        .skip(1)
        .map(|r| (r[0].parse().unwrap(), r[1].parse().unwrap()))
        .collect()
}

#[test]
fn simulate_hadamard_three_steps() {
    let dir = TempDir::new().unwrap();
    let out = qwalk(
        "simulate",
        Some(r#"{"schema": 1, "phi": [[1, 0], [0, 0]], "steps": [3]}"#),
        dir.path(),
        &[],
    );
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let expected = [(-3, 0.0), (-1, 0.25), (1, 0.5), (3, 0.25)];
    for name in ["direct_n3.csv", "cheb_n3.csv"] {
        let probs = prob_map(&dir.path().join("out").join(name));
        for (x, want) in expected {
            let got = probs.iter().find(|p| p.0 == x).map_or(0.0, |p| p.1);
            assert!((got - want).abs() < 1e-12, "{name} x = {x}: {got}");
        }
    }
    let gaps = read_csv(&dir.path().join("out/gaps.csv"));
    assert_eq!(gaps[0], ["n", "gap"]);
    assert!(gaps[1][1].parse::<f64>().unwrap() < 1e-10);
}

#[test]
fn simulate_zero_steps_is_a_point_mass() {
    let dir = TempDir::new().unwrap();
    let out = qwalk(
        "simulate",
        Some(r#"{"schema": 1, "steps": [0]}"#),
        dir.path(),
        &[],
    );
    assert_eq!(out.status.code(), Some(0));
    for name in ["direct_n0.csv", "cheb_n0.csv"] {
        let probs = prob_map(&dir.path().join("out").join(name));
        assert_eq!(probs.len(), 1);
        assert_eq!(probs[0].0, 0);
        assert!((probs[0].1 - 1.0).abs() < 1e-12);
    }
}

#[test]
fn simulate_degenerate_coin_skips_chebyshev() {
    let dir = TempDir::new().unwrap();
    let out = qwalk(
        "simulate",
        Some(r#"{"schema": 1, "coin": {"a": [1, 0], "b": [0, 0]}, "steps": [2]}"#),
        dir.path(),
        &[],
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("degenerate"));
    assert!(dir.path().join("out/direct_n2.csv").exists());
    assert!(!dir.path().join("out/cheb_n2.csv").exists());
}

#[test]
fn csv_values_round_trip() {
    let dir = TempDir::new().unwrap();
    qwalk(
        "simulate",
        Some(r#"{"schema": 1, "steps": [7]}"#),
        dir.path(),
        &[],
    );
    for row in read_csv(&dir.path().join("out/direct_n7.csv"))
        .iter()
        .skip(1)
    {
        let v: f64 = row[1].parse().unwrap();
        assert_eq!(format!("{v:.16e}"), row[1]);
    }
}

#[test]
fn algebra_pass_and_injected_fault() {
    let dir = TempDir::new().unwrap();
    let ok = qwalk(
        "algebra",
        Some(r#"{"schema": 1, "lattice_size": 3}"#),
        dir.path(),
        &[],
    );
    assert_eq!(ok.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("out/relations.json")).unwrap(),
    )
    .unwrap();
    assert!(report["W^2 = -I"].as_f64().unwrap() <= 1e-12);

    let bad = qwalk(
        "algebra",
        Some(r#"{"schema": 1, "perturb_w": 1e-6}"#),
        dir.path(),
        &[],
    );
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stdout).contains("W^2 = -I"));
}

#[test]
fn invalid_config_exits_two() {
    let dir = TempDir::new().unwrap();
    for text in [
        r#"{"schema": 9}"#,
        r#"{"schema": 1, "coin": {"a": [0.9, 0], "b": [0.5, 0]}}"#,
        r#"{"schema": 1, "steps": [5, 2]}"#,
        "{",
    ] {
        let out = qwalk("simulate", Some(text), dir.path(), &[]);
        assert_eq!(out.status.code(), Some(2), "{text}");
    }
    let out = qwalk(
        "limit",
        Some(r#"{"schema": 1, "steps": [50]}"#),
        dir.path(),
        &["--max-n", "10"],
    );
    assert_eq!(out.status.code(), Some(2));
    let out = qwalk(
        "limit",
        Some(r#"{"schema": 1, "coin": {"a": [1, 0], "b": [0, 0]}}"#),
        dir.path(),
        &[],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn limit_threshold_and_override() {
    let dir = TempDir::new().unwrap();
    let cfg = r#"{"schema": 1, "steps": [100, 200]}"#;
    let fail = qwalk("limit", Some(cfg), dir.path(), &[]);
    assert_eq!(fail.status.code(), Some(1));
    let pass = qwalk("limit", Some(cfg), dir.path(), &["--tol", "0.1"]);
    assert_eq!(pass.status.code(), Some(0));
    let rows = read_csv(&dir.path().join("out/kolmogorov.csv"));
    assert_eq!(rows[0], ["n", "Dn"]);
    assert_eq!(rows.len(), 3);
}

#[test]
fn charfn_and_asym_tables() {
    let dir = TempDir::new().unwrap();
    let cfg =
        r#"{"schema": 1, "steps": [200, 400], "xi": [0, 1], "asym_k": [1], "asym_xi": [0.5]}"#;
    let out = qwalk("charfn", Some(cfg), dir.path(), &["--tol", "1e-3"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = read_csv(&dir.path().join("out/charfn.csv"));
    assert_eq!(rows[0].join(","), "n,xi,re_En,im_En,re_limit,im_limit,gap");
    assert_eq!(rows.len(), 5);
    assert!(rows[1][6].parse::<f64>().unwrap() < 1e-10);

    let out = qwalk("asym", Some(cfg), dir.path(), &[]);
    assert_eq!(out.status.code(), Some(0));
    let rows = read_csv(&dir.path().join("out/asym.csv"));
    assert_eq!(rows[0].len(), 15);
    let gap_b: Vec<f64> = rows[1..].iter().map(|r| r[12].parse().unwrap()).collect();
    assert!(gap_b[1] < gap_b[0]);
}

#[test]
fn runs_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let cfg = r#"{"schema": 1, "draws": 3, "seed": 11}"#;
    qwalk("algebra", Some(cfg), dir.path(), &[]);
    let first = std::fs::read_to_string(dir.path().join("out/relations.json")).unwrap();
    qwalk("algebra", Some(cfg), dir.path(), &["--threads", "1"]);
    let second = std::fs::read_to_string(dir.path().join("out/relations.json")).unwrap();
    assert_eq!(first, second);
}
