use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("vhj-lab-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vhj-lab")).current_dir(dir).args(args).output().unwrap()
}

fn summary(path: PathBuf) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn zero_data_give_an_all_zero_trajectory() {
    let dir = scratch("zero");
    let out = run(&dir, &["solve-parabolic", "--config", "zero", "--out", "o"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = fs::read_to_string(dir.join("o/run_solve_parabolic.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("t,x,u"));
    let mut rows = 0;
    for line in lines {
        let u: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert_eq!(u, 0.0);
        rows += 1;
    }
    assert!(rows > 129);
    let s = summary(dir.join("o/run_solve_parabolic.json"));
    assert_eq!(s["result"]["detachment_count"], 0);
    assert_eq!(s["config"]["data"]["f"], "0");
}

#[test]
fn bad_exponents_exit_with_config_code() {
    let dir = scratch("bad");
    fs::write(dir.join("bad.toml"), "[equation]\np = 3.0\nq = 3.0\n").unwrap();
    let out = run(&dir, &["solve-parabolic", "--config", "bad.toml"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("q > p ≥ 2"));

    fs::write(dir.join("typo.toml"), "[equation]\npp = 3.0\n").unwrap();
    assert_eq!(run(&dir, &["ergodic", "--config", "typo.toml"]).status.code(), Some(2));
    assert_eq!(run(&dir, &["holder", "--config", "missing.toml"]).status.code(), Some(2));
}

#[test]
fn solver_failure_exits_with_code_3() {
    let dir = scratch("solver");
    fs::write(dir.join("c.toml"), "[data]\nf = \"sin(7*x)\"\n[stationary]\nmax_iterations = 2\ntol = 1e-12\n").unwrap();
    let out = run(&dir, &["solve-stationary", "--config", "c.toml"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

fn without_timestamp(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timestamp").expect("timestamp recorded");
    v
}

#[test]
fn identical_runs_give_identical_summaries() {
    let dir = scratch("det");
    fs::write(dir.join("c.toml"), "[data]\nf = \"cos(3*x)\"\ng = \"2*t\"\n[parabolic]\nhorizon = 0.02\n").unwrap();
    for cmd in ["solve-parabolic", "compare"] {
        let stem = cmd.replace('-', "_");
        let mut docs = Vec::new();
        for out in ["a", "b"] {
            let o = run(&dir, &[cmd, "--config", "c.toml", "--seed", "7", "--out", out]);
            assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
            docs.push(without_timestamp(summary(dir.join(format!("{out}/run_{stem}.json")))));
        }
        assert_eq!(docs[0], docs[1], "{cmd}");
        assert_eq!(docs[0]["seed"], 7);
    }
    let csv = |d: &str| fs::read(dir.join(format!("{d}/run_solve_parabolic.csv"))).unwrap();
    assert_eq!(csv("a"), csv("b"));
}

/// k for constant sources on an interval of length L, from the explicit
/// travelling profile of the state-constraint problem.
fn k_interval(p: f64, q: f64, len: f64) -> f64 {
    let base = 2.0 * (p - 1.0) * PI / (len * q * (PI * (p - 1.0) / q).sin());
    base.powf(q / (q - p + 1.0))
}

#[test]
fn ergodic_preset_reports_the_constant() {
    let dir = scratch("erg");
    let out = run(&dir, &["ergodic", "--config", "ftilde_minus1", "--out", "o"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let s = summary(dir.join("o/run_ergodic.json"));
    let r = &s["result"];
    let k = k_interval(2.0, 3.0, 1.0);
    let c = r["c"].as_f64().unwrap();
    assert!((c - (1.0 - k)).abs() <= 0.05 * k, "c = {c}, k = {k}");
    assert_eq!(r["converged"], true);
    assert_eq!(r["band_violations"], 0);
    assert_eq!(r["estimates"].as_array().unwrap().len(), 10);
    let dat = fs::read_to_string(dir.join("o/run_ergodic_c.dat")).unwrap();
    assert_eq!(dat.lines().filter(|l| !l.starts_with('#')).count(), 10);
}

#[test]
fn analysis_commands_read_csv_inputs() {
    let dir = scratch("analysis");
    fs::write(dir.join("c.toml"), "[data]\nf = \"-1\"\n[parabolic]\nhorizon = 2.0\n[domain.interval]\nn = 32\n").unwrap();
    assert!(run(&dir, &["solve-parabolic", "--config", "c.toml", "--out", "o"]).status.success());

    let o = run(&dir, &["supconv", "--config", "c.toml", "--input", "o/run_solve_parabolic.csv", "--alpha", "0.2", "--out", "s"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let r = summary(dir.join("s/run_supconv.json"))["result"].clone();
    assert_eq!(r["lipschitz"]["pass"], true);
    assert_eq!(r["maximizer_window"]["pass"], true);

    let o = run(&dir, &["slope", "--config", "c.toml", "--input", "o/run_solve_parabolic.csv", "--out", "s"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(summary(dir.join("s/run_slope.json"))["result"]["slope"].as_f64().unwrap().is_finite());

    // |u(x) - u(y)| / |x - y|^0.5 over {(0, 0), (0.25, 1), (1, 0.5)}: max is 1/0.5 = 2.
    fs::write(dir.join("f.csv"), "x,u\n0,0\n0.25,1\n1,0.5\n").unwrap();
    let o = run(&dir, &["holder", "--input", "f.csv", "--beta", "0.5", "--out", "s"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let r = summary(dir.join("s/run_holder.json"))["result"].clone();
    assert!((r["seminorm"].as_f64().unwrap() - 2.0).abs() < 1e-15);

    fs::write(dir.join("broken.csv"), "a,b\n1,2\n").unwrap();
    assert_eq!(run(&dir, &["holder", "--input", "broken.csv"]).status.code(), Some(2));
}

#[test]
fn barrier_verification_reports_positive_margins() {
    let dir = scratch("barrier");
    let o = run(&dir, &["verify-barrier", "--out", "o"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let r = summary(dir.join("o/run_verify_barrier.json"))["result"].clone();
    assert!(r["h2"]["margin"].as_f64().unwrap() > 0.0);
    assert!(r["ubar"]["collar_margin"].as_f64().unwrap() > 0.0);
    assert!(r["ubar"]["core_margin"].as_f64().unwrap() > 0.0);
    for s in r["scales"].as_array().unwrap() {
        assert!(s["margin"].as_f64().unwrap() > 0.0);
    }
}
