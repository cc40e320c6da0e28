use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_schurprep"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&o.stdout)))
}

fn file(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn map_boson_reference_label() {
    let dir = TempDir::new().unwrap();
    let t = file(&dir, "t.json", r#"{"d":3,"N":3,"statistics":"boson","terms":[{"occupations":[2,1,0],"re":1}]}"#);
    let o = run(&["map", s(&t)]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["lambda"], serde_json::json!([3, 0, 0]));
    assert_eq!(v["terms"][0]["gt"], "(3,0;2)");
    assert_eq!(v["terms"][0]["z"], serde_json::json!([1, 1]));
}

#[test]
fn map_rejects_empty_terms_and_empty_sector() {
    let dir = TempDir::new().unwrap();
    let empty = file(&dir, "e.json", r#"{"d":3,"N":3,"statistics":"boson","terms":[]}"#);
    let o = run(&["map", s(&empty)]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("terms"));

    let fermi = file(&dir, "f.json", r#"{"d":2,"N":3,"statistics":"fermion","terms":[{"occupations":[2,1],"re":1}]}"#);
    let o = run(&["map", s(&fermi)]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("sector empty"));
}

#[test]
fn map_rejects_malformed_json() {
    let dir = TempDir::new().unwrap();
    let t = file(&dir, "t.json", "{not json");
    assert_eq!(code(&run(&["map", s(&t)])), 1);
    assert_eq!(code(&run(&["map", "/nonexistent/task.json"])), 1);
}

#[test]
fn prepare_fermion_and_boson_corner() {
    let dir = TempDir::new().unwrap();
    let f = file(&dir, "f.json", r#"{"d":3,"N":3,"statistics":"fermion","terms":[{"occupations":[1,1,1],"re":1}]}"#);
    for method in ["spectral", "cascade"] {
        let v = json(&run(&["prepare", s(&f), "--method", method]));
        assert_eq!(v["nonzero"], 6);
        assert_eq!(v["dimension"], 27);
        assert!((v["norm"].as_f64().unwrap() - 1.0).abs() < 1e-12);
        for a in v["amplitudes"].as_array().unwrap() {
            assert!((a["re"].as_f64().unwrap().abs() - 6f64.sqrt().recip()).abs() < 1e-12);
        }
    }
    let b = file(&dir, "b.json", r#"{"d":3,"N":3,"statistics":"boson","terms":[{"occupations":[0,0,3],"re":1}]}"#);
    let v = json(&run(&["prepare", s(&b)]));
    assert_eq!(v["nonzero"], 1);
    assert_eq!(v["amplitudes"][0]["index"], "222");
    assert!((v["amplitudes"][0]["re"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn prepare_exports_json_and_csv() {
    let dir = TempDir::new().unwrap();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let t = file(
        &dir,
        "t.json",
        &format!(r#"{{"d":2,"N":2,"statistics":"boson","terms":[{{"occupations":[2,0],"re":{h}}},{{"occupations":[0,2],"re":{h}}}]}}"#),
    );
    let out_json = dir.path().join("state.json");
    let o = run(&["prepare", s(&t), "--export", s(&out_json)]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert!(v.get("amplitudes").is_none());
    assert!(v["max_coefficient_error"].as_f64().unwrap() < 1e-12);
    let exported: Value = serde_json::from_str(&fs::read_to_string(&out_json).unwrap()).unwrap();
    assert_eq!(exported["amplitudes"].as_array().unwrap().len(), 2);

    let out_csv = dir.path().join("state.csv");
    assert_eq!(code(&run(&["prepare", s(&t), "--export", s(&out_csv), "--format", "csv"])), 0);
    let csv = fs::read_to_string(&out_csv).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "index,re,im");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("00,"));
}

#[test]
fn prepare_refuses_over_cap() {
    let dir = TempDir::new().unwrap();
    let t = file(&dir, "t.json", r#"{"d":4,"N":12,"statistics":"boson","terms":[{"occupations":[3,3,3,3],"re":1}]}"#);
    let o = run(&["prepare", s(&t)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("exceeds cap"));
}

#[test]
fn selftest_reports_and_fault_is_detected() {
    let o = run(&["selftest"]);
    let v = json(&o);
    assert_eq!(v["golden"]["total"], 27);
    assert_eq!(v["dimension_identity"]["failures"].as_array().unwrap().len(), 0);
    let pass = v["pass"].as_bool().unwrap();
    assert_eq!(code(&o), if pass { 0 } else { 3 });

    let o = run(&["selftest", "--method", "cascade", "--inject-fault"]);
    assert_eq!(code(&o), 3);
    let v = json(&o);
    assert_eq!(v["pass"], false);
    assert_eq!(v["golden"]["entries"][0]["matched"], false);
}

#[test]
fn estimate_matches_goldens() {
    let base = ["estimate", "--d", "50", "--N", "10", "--L", "50", "--eps", "1e-4"];
    let oaa = json(&run(&[&base[..], &["--mode", "oaa"]].concat()));
    let rus = json(&run(&[&base[..], &["--mode", "rus"]].concat()));
    assert_eq!(oaa["te_schur"], 373_679_074_481u64);
    assert_eq!(oaa["te_total"], 373_679_077_462u64);
    assert_eq!(rus["te_total"], 373_679_085_531u64);
    assert_eq!(oaa["block"]["r_star"], 6);
    assert_eq!(oaa["block"]["prep"]["te"], 162);
    for key in ["schur", "schur_qubits", "registers", "te_schur", "q_schur"] {
        assert_eq!(oaa[key], rus[key], "{key}");
    }
    assert_ne!(oaa["block"], rus["block"]);
}

#[test]
fn estimate_validation_errors() {
    assert_eq!(code(&run(&["estimate", "--d", "3", "--N", "3", "--L", "4", "--eps", "0.5"])), 1);
    assert_eq!(code(&run(&["estimate", "--d", "3", "--N", "3", "--L", "1"])), 1);
    assert_eq!(code(&run(&["estimate", "--d", "3"])), 1);
    assert_eq!(code(&run(&["bogus"])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn estimate_from_task_uses_term_count_and_config() {
    let dir = TempDir::new().unwrap();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let t = file(
        &dir,
        "t.json",
        &format!(
            r#"{{"d":2,"N":2,"statistics":"boson","params":{{"epsilon":1e-3}},
               "terms":[{{"occupations":[2,0],"re":{h}}},{{"occupations":[0,2],"re":{h}}}]}}"#
        ),
    );
    let v = json(&run(&["estimate", "--task", s(&t), "--mode", "rus"]));
    assert_eq!(v["L"], 2);
    assert_eq!(v["params"]["epsilon"], 1e-3);
    assert!((v["block"]["l1"].as_f64().unwrap() - 2f64.sqrt()).abs() < 1e-12);

    let cfg = file(&dir, "c.json", r#"{"b_r": 9, "encoding": "naive"}"#);
    let v = json(&run(&["--config", s(&cfg), "estimate", "--d", "5", "--N", "4", "--L", "8"]));
    assert_eq!(v["params"]["b_r"], 9);
    assert_eq!(v["registers"]["encoding"], "naive");

    let bad = file(&dir, "bad.json", r#"{"no_such_field": 1}"#);
    assert_eq!(code(&run(&["--config", s(&bad), "estimate", "--d", "5", "--N", "4", "--L", "8"])), 1);
}

#[test]
fn sweep_crossover_and_determinism() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("a.csv");
    let o = run(&["sweep", "--d", "50", "--N", "10", "--L-pow2", "1..40", "--eps", "1e-4", "--out", s(&out), "--crossover"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let l_star: Vec<(String, u64)> = v["crossovers"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["mode"].as_str().unwrap().to_string(), c["L_star"].as_u64().unwrap()))
        .collect();
    assert_eq!(l_star, vec![("rus".into(), 7_163_905), ("oaa".into(), 10_462_752_769)]);

    let csv = fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 1 + 40 * 2);
    let header: Vec<&str> = lines[0].split(',').collect();
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
    let (te_block, te_schur) = (col("te_block"), col("te_schur"));
    let schur: Vec<u128> = lines[1..].iter().map(|l| l.split(',').nth(te_schur).unwrap().parse().unwrap()).collect();
    assert!(schur.iter().all(|&x| x == schur[0]));
    let first: u128 = lines[1].split(',').nth(te_block).unwrap().parse().unwrap();
    let last: u128 = lines[80].split(',').nth(te_block).unwrap().parse().unwrap();
    assert!(first < schur[0] && last > schur[0]);

    let again = dir.path().join("b.csv");
    run(&["sweep", "--d", "50", "--N", "10", "--L-pow2", "1..40", "--eps", "1e-4", "--out", s(&again)]);
    assert_eq!(fs::read(&out).unwrap(), fs::read(&again).unwrap());
}

#[test]
fn sweep_spec_file_single_point_and_validation() {
    let dir = TempDir::new().unwrap();
    let spec = file(&dir, "s.json", r#"{"d":[4],"N":[3],"L":[50],"epsilon":[1e-4],"mode":"oaa","params":{"b_r":8}}"#);
    let o = run(&["sweep", s(&spec)]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().nth(1).unwrap().starts_with("4,3,1.00000000000e-4,50,oaa,"));

    let unsorted = file(&dir, "u.json", r#"{"d":[5,4],"N":[3],"L":[50],"epsilon":[1e-4]}"#);
    assert_eq!(code(&run(&["sweep", s(&unsorted)])), 1);
    let empty = file(&dir, "e.json", r#"{"d":[],"N":[3],"L":[50],"epsilon":[1e-4]}"#);
    assert_eq!(code(&run(&["sweep", s(&empty)])), 1);
    assert_eq!(code(&run(&["sweep", "--d", "4", "--N", "3", "--L", "8", "--crossover"])), 1);
}

#[test]
fn sweep_epsilon_axis_grows_logarithmically() {
    let o = run(&["sweep", "--d", "10", "--N", "5", "--L", "50", "--eps", "1e-12,1e-9,1e-6,1e-3", "--mode", "oaa"]);
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    let col = lines[0].split(',').position(|h| h == "te_schur").unwrap();
    let te: Vec<f64> = lines[1..].iter().map(|l| l.split(',').nth(col).unwrap().parse().unwrap()).collect();
    // Strictly decreasing as epsilon grows, with bounded ratios per decade.
    assert!(te.windows(2).all(|w| w[0] > w[1]));
    let ratio = te[0] / te[3];
    assert!(ratio > 1.0 && ratio < 4.0, "{te:?}");
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let t = file(&dir, "t.json", r#"{"d":3,"N":3,"statistics":"parafermion","order":2,"terms":[{"occupations":[1,1,1],"re":1}]}"#);
    for args in [vec!["map", s(&t)], vec!["prepare", s(&t)], vec!["estimate", "--d", "7", "--N", "6", "--L", "300"]] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(code(&a), 0, "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
