use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn hdirac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hdirac")).args(args).output().expect("run hdirac")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("hdirac-{}-{name}", std::process::id()))
}

#[test]
fn verify_is_byte_identical_across_runs() {
    let args = ["--series", "A2", "--seed", "11", "verify"];
    let a = hdirac(&args);
    let b = hdirac(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let doc = json(&a);
    assert_eq!(doc["seed"], 11);
    assert_eq!(doc["config"]["system"], "A2");
    assert_eq!(doc["result"]["counts"]["fail"], 0);
    assert_eq!(doc["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(hdirac(&["verify"]).status.code(), Some(2));
    assert_eq!(hdirac(&["--series", "Q3", "verify"]).status.code(), Some(2));
    assert_eq!(hdirac(&["--series", "A2", "frobnicate"]).status.code(), Some(2));
    assert_eq!(hdirac(&["--series", "B2", "--c", "long", "verify"]).status.code(), Some(2));
    assert_eq!(hdirac(&["--series", "A1", "dirac-report", "--nu", "1,2"]).status.code(), Some(2));
    let cfg = scratch("corrupt.json");
    std::fs::write(&cfg, "{ not json").unwrap();
    assert_eq!(hdirac(&["--config", cfg.to_str().unwrap(), "verify"]).status.code(), Some(2));
    std::fs::remove_file(cfg).ok();
}

#[test]
fn failing_checks_exit_with_one() {
    let out = hdirac(&["--series", "A2", "--tol", "1e-300", "verify", "--suite", "dirac"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json(&out)["result"]["counts"]["fail"].as_u64().unwrap() > 0);
}

#[test]
fn dihedral_five_skips_exact_checks() {
    let out = hdirac(&["--series", "I2", "--m", "5", "verify", "--suite", "hecke,vogan"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let checks = doc["result"]["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["status"] == "skipped"));
    assert!(checks.iter().filter(|c| c["suite"] == "vogan").all(|c| c["status"] == "skipped"));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let cfg = scratch("run.json");
    std::fs::write(&cfg, r#"{"series": "B2", "c": {"long": 1, "short": "2"}, "seed": 4, "format": "json"}"#).unwrap();
    let out = hdirac(&["--config", cfg.to_str().unwrap(), "--seed", "9", "ctable"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["seed"], 9);
    assert_eq!(doc["config"]["parameters"]["short"], "2");
    assert_eq!(doc["result"]["order"], 16);
    std::fs::remove_file(cfg).ok();
}

#[test]
fn csv_and_out_file() {
    let path = scratch("orbits.csv");
    let out = hdirac(&["--series", "A3", "--format", "csv", "--out", path.to_str().unwrap(), "orbits"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("orbit,nu,norm2,solvable"));
    assert_eq!(lines.next(), Some("(4),1 1 1,5,true"));
    assert_eq!(text.lines().count(), 6);
    std::fs::remove_file(path).ok();
}

#[test]
fn a1_critical_point_reports_kernel_and_cohomology_separately() {
    let doc = json(&hdirac(&["--series", "A1", "dirac-report", "--nu", "1"]));
    for spin in doc["result"]["spins"].as_array().unwrap() {
        assert_eq!(spin["dim_kernel"], 1);
        assert_eq!(spin["dim_cohomology"], 0);
        assert_eq!(spin["vogan"]["subspace"], "kernel");
    }
    let off = json(&hdirac(&["--series", "A1", "dirac-report", "--nu", "1/2"]));
    assert_eq!(off["result"]["nu_norm2"], "1/8");
    assert!(off["result"]["spins"].as_array().unwrap().iter().all(|s| s["dim_kernel"] == 0));
}

#[test]
fn bounds_on_the_default_a2_grid() {
    let doc = json(&hdirac(&["--series", "A2", "bounds"]));
    assert_eq!(doc["result"]["points"], 81);
    let rows = doc["result"]["rows"].as_array().unwrap();
    let rho = rows.iter().find(|r| r["nu"] == serde_json::json!(["1", "1"])).unwrap();
    assert_eq!(rho["passes"], true);
    assert_eq!(rho["in_regular_orbit"], true);
}

#[test]
fn zeta_of_the_casimir() {
    let out = hdirac(&["--series", "A2", "--format", "text", "zeta"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# zeta on A2"));
    assert!(text.contains("result: pass"));
    assert_eq!(hdirac(&["--series", "I2(5)", "zeta"]).status.code(), Some(2));
}
