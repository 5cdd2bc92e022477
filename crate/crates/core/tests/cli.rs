//! End-to-end runs of the command-line binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn geomgate(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geomgate"))
        .args(args)
        .env("GEOMGATE_WORKERS", "1")
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn simulate_writes_csv_and_manifest_that_reproduce() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "not.json",
        r#"{"device": {"alpha_MHz": 220}, "pulse": {"omega0_MHz": 40}, "noise": {"kappa_kHz": 4}}"#,
    );
    let out1 = dir.path().join("run1");
    let o = geomgate(&[
        "simulate",
        "--config",
        &cfg,
        "--out",
        out1.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let csv = fs::read_to_string(out1.join("fig2b.csv")).unwrap();
    assert!(csv.starts_with("time_s,p0,p1,p2,fidelity\n"));
    let manifest = out1.join("fig2b.manifest.json");
    let m: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&manifest).unwrap()).unwrap();
    assert_eq!(m["tool"], "geomgate");
    assert_eq!(m["config"]["experiment"], "fig2b");

    let out2 = dir.path().join("run2");
    let o = geomgate(&[
        "simulate",
        "--config",
        manifest.to_str().unwrap(),
        "--out",
        out2.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read(out2.join("fig2b.csv")).unwrap(), csv.as_bytes());
}

#[test]
fn sweep_writes_one_row_per_grid_point() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "pair.json",
        r#"{"experiment": "fig5a", "device": {},
            "sweep": {"alphaA_MHz": {"from": 200, "to": 240, "points": 2},
                      "alphaB_MHz": {"from": 235, "to": 275, "points": 2}, "grid": 5}}"#,
    );
    let o = geomgate(&[
        "sweep",
        "--config",
        &cfg,
        "--out",
        dir.path().to_str().unwrap(),
        "--workers",
        "2",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let csv = fs::read_to_string(dir.path().join("fig5a.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "alphaA_MHz,alphaB_MHz,fidelity");
    assert_eq!(lines.len(), 5);
}

#[test]
fn config_problems_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let typo = write(
        dir.path(),
        "typo.json",
        r#"{"device": {}, "pulse": {"ampltude": 1}}"#,
    );
    let o = geomgate(&["simulate", "--config", &typo, "--out", out]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nearest valid key"));

    let o = geomgate(&[
        "simulate",
        "--config",
        "/nonexistent/config.json",
        "--out",
        out,
    ]);
    assert_eq!(o.status.code(), Some(1));

    let sweep_cfg = write(
        dir.path(),
        "s.json",
        r#"{"experiment": "fig8", "device": {}, "pulse": {}}"#,
    );
    let o = geomgate(&["simulate", "--config", &sweep_cfg, "--out", out]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("`sweep`"));
}

#[test]
fn coarse_step_is_an_integration_failure() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "not.json", r#"{"device": {}, "pulse": {}}"#);
    let o = geomgate(&[
        "simulate",
        "--config",
        &cfg,
        "--out",
        dir.path().to_str().unwrap(),
        "--dt-ps",
        "5000",
    ]);
    assert_eq!(
        o.status.code(),
        Some(2),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
}

#[test]
fn verify_exit_code_follows_the_report() {
    let o = geomgate(&["verify", "--suite", "ideal"]);
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("parallel_transport_residual"));
    assert_eq!(
        o.status.code(),
        Some(if text.contains("FAIL") { 3 } else { 0 })
    );

    let o = geomgate(&["verify", "--suite", "composite"]);
    let text = String::from_utf8_lossy(&o.stdout);
    assert_eq!(
        o.status.code(),
        Some(if text.contains("FAIL") { 3 } else { 0 })
    );

    assert_eq!(
        geomgate(&["verify", "--suite", "everything"]).status.code(),
        Some(1)
    );
    assert_eq!(geomgate(&["--help"]).status.code(), Some(0));
}
