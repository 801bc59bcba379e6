use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn gmorse(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gmorse"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

const BENCH: [&str; 8] = ["--preset", "hermitian", "--v1", "1", "--v2", "2", "--alpha", "1"];

fn with(base: &[&str], rest: &[&str]) -> Vec<String> {
    base.iter().chain(rest).map(|s| s.to_string()).collect()
}

fn run(args: Vec<String>) -> Output {
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    gmorse(&refs)
}

#[test]
fn spectrum_of_benchmark_has_one_level() {
    let out = run(with(&BENCH, &["spectrum"]));
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let levels = v.as_array().unwrap();
    assert_eq!(levels.len(), 1);
    let e = &levels[0]["E"];
    assert!((e[0].as_f64().unwrap() + 0.25).abs() < 1e-12);
    assert_eq!(e[1].as_f64().unwrap(), 0.0);
    assert_eq!(levels[0]["real"], true);
    // every float carries 17 significant digits
    assert!(stdout(&out).contains("-2.5000000000000000e-1"));
}

#[test]
fn classify_presets() {
    let pt = gmorse(&["--preset", "pt_imaginary_alpha", "--v1", "1", "--v2", "2", "--a", "1", "classify"]);
    assert_eq!(pt.status.code(), Some(0));
    assert_eq!(stdout(&pt), "PTSymmetric\n");

    let herm = run(with(&BENCH, &["classify"]));
    assert_eq!(stdout(&herm), "Hermitian\n");

    let non_pt = gmorse(&["--preset", "non_pt_complex", "--A", "2", "--B", "1", "--C", "2", "--alpha", "1", "classify", "--format", "json"]);
    assert_eq!(json(&non_pt)["symmetry"], "NonPTNonHermitian");
}

#[test]
fn validate_without_bound_states_passes() {
    let out = gmorse(&["--v1", "1", "--v2", "0", "--alpha", "1", "validate", "--case", "barrier"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["case"], "barrier");
    assert!(v["matches"].as_array().unwrap().is_empty());
    assert!(v["spectrum"].as_array().unwrap().is_empty());
}

#[test]
fn validate_benchmark_and_coarse_failure() {
    let ok = run(with(&BENCH, &["validate"]));
    assert_eq!(ok.status.code(), Some(0));
    let v = json(&ok);
    assert_eq!(v["matches"].as_array().unwrap().len(), 1);
    assert_eq!(v["matches"][0]["pass"], true);

    let bad = run(with(&BENCH, &["validate", "--points", "40"]));
    assert_eq!(bad.status.code(), Some(3));
    // the report is still written
    assert_eq!(json(&bad)["pass"], false);
}

#[test]
fn validate_pt_and_non_pt_presets() {
    let pt = gmorse(&["--preset", "pt_imaginary_alpha", "--v1", "1", "--v2", "2", "--a", "1", "validate"]);
    assert_eq!(pt.status.code(), Some(0));
    assert!(json(&pt)["oracle"]["skipped"].is_string());

    let non_pt = gmorse(&["--preset", "non_pt_complex", "--A", "2", "--B", "1", "--C", "2", "--alpha", "1", "validate"]);
    assert_eq!(non_pt.status.code(), Some(0));
    assert_eq!(json(&non_pt)["matches"].as_array().unwrap().len(), 2);
}

#[test]
fn output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for i in 0..2 {
        let path = dir.path().join(format!("report{i}.json"));
        let out = run(with(&BENCH, &["validate", "--out", path.to_str().unwrap()]));
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
        files.push(fs::read(&path).unwrap());
    }
    assert_eq!(files[0], files[1]);

    let a = run(with(&BENCH, &["wavefunction", "--n", "0", "--grid", "-3:10:301"]));
    let b = run(with(&BENCH, &["wavefunction", "--n", "0", "--grid", "-3:10:301"]));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn params_file_forms() {
    let dir = tempfile::tempdir().unwrap();
    let explicit = dir.path().join("explicit.json");
    fs::write(&explicit, r#"{"v1":[1,0],"v2":[2,0],"alpha":[1,0],"mass":0.5,"hbar":1}"#).unwrap();
    let preset = dir.path().join("preset.json");
    fs::write(&preset, r#"{"preset":{"kind":"non_pt_complex","A":2,"B":1,"C":2,"alpha":1}}"#).unwrap();

    let from_file = gmorse(&["--params", explicit.to_str().unwrap(), "spectrum"]);
    let from_flags = run(with(&BENCH, &["spectrum"]));
    assert_eq!(from_file.stdout, from_flags.stdout);

    let out = gmorse(&["--params", preset.to_str().unwrap(), "spectrum"]);
    let levels = json(&out);
    let energies: Vec<f64> = levels.as_array().unwrap().iter().map(|l| l["E"][0].as_f64().unwrap()).collect();
    assert_eq!(energies.len(), 2);
    assert!((energies[0] + 4.0).abs() < 1e-12 && (energies[1] + 1.0).abs() < 1e-12);

    // a command-line mass overrides the document: m = 2 gives λ = 2, levels −1 and −1/9
    let heavy = gmorse(&["--params", explicit.to_str().unwrap(), "--mass", "2", "spectrum"]);
    assert_eq!(json(&heavy).as_array().unwrap().len(), 2);
}

#[test]
fn wavefunction_table_is_normalized() {
    let out = run(with(&BENCH, &["wavefunction", "--n", "0", "--grid", "-6:30:36001"]));
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,re_psi,im_psi"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 36001);
    let h = 36.0 / 36000.0;
    let norm: f64 = rows.iter().map(|r| (r[1] * r[1] + r[2] * r[2]) * h).sum();
    assert!((norm - 1.0).abs() < 1e-8, "{norm}");
}

#[test]
fn coherent_and_trajectory_tables() {
    let out = gmorse(&["--v1", "1", "--v2", "2", "--alpha", "1", "coherent", "--au", "1,0.3", "--av", "0,1", "--smax", "2", "--steps", "200"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.starts_with("s,t,x_mean,re_au,im_au,re_av,im_av\n"));
    assert_eq!(text.lines().count(), 202);

    let out = run(with(&BENCH, &["trajectory", "--x0", "0.3", "--px0", "-0.2", "--smax", "3", "--steps", "50", "--propagator", "yoshida4"]));
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("s,t,x,px,u,v,pu,pv\n"));
    assert_eq!(text.lines().count(), 52);
}

#[test]
fn invalid_input_exits_with_2() {
    let cases: Vec<Vec<String>> = vec![
        with(&BENCH, &["--params", "p.json", "spectrum"]),
        with(&[], &["--v1", "1", "--v2", "2", "spectrum"]),
        with(&[], &["spectrum"]),
        with(&["--preset", "bogus", "--v1", "1"], &["classify"]),
        with(&["--preset", "hermitian", "--v1", "1", "--v2", "2"], &["spectrum"]),
        with(&["--A", "2", "--v1", "1", "--v2", "2", "--alpha", "1"], &["spectrum"]),
        with(&BENCH, &["wavefunction", "--n", "0", "--grid", "0:1"]),
        with(&BENCH, &["validate", "--format", "csv"]),
        with(&BENCH, &["validate", "--solver", "lanczos"]),
        with(&BENCH, &["trajectory", "--x0", "0", "--px0", "0", "--smax", "1", "--steps", "3", "--propagator", "rk4"]),
        with(&["--v1", "1,x", "--v2", "2", "--alpha", "1"], &["spectrum"]),
        with(&["--params", "/nonexistent/p.json"], &["spectrum"]),
        with(&["--preset", "pt_imaginary_alpha", "--v1", "1", "--v2", "2", "--a", "1"], &["coherent", "--au", "1", "--av", "0", "--smax", "1", "--steps", "2"]),
    ];
    for args in cases {
        let out = run(args.clone());
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}
