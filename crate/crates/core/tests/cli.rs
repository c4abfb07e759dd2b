use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn maasskit(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maasskit")).args(args).current_dir(cwd).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn strip_runtime(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("runtime_ms");
            m.values_mut().for_each(strip_runtime);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_runtime),
        _ => {}
    }
}

fn eisenstein(dir: &TempDir) {
    let o = maasskit(&["corpus", "gen-eisenstein", "--nu", "0.25", "--n-max", "2000", "--out", "eis"], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn involution_passes_and_records_anchor_and_seed() {
    let dir = TempDir::new().unwrap();
    eisenstein(&dir);
    assert!(dir.path().join("eis/spec.json").exists());
    assert!(dir.path().join("eis/spec_a.csv").exists());
    let args =
        ["check", "involution", "--spec", "eis/spec.json", "--points", "default", "--tol", "1e-7", "--seed", "9"];
    let o = maasskit(&[&args[..], &["--out", "inv.json", "--csv", "inv.csv"]].concat(), dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&dir.path().join("inv.json"));
    assert_eq!(v["pass"], true);
    assert_eq!(v["seed"], 9);
    let report = &v["reports"][0];
    assert_eq!(report["params"]["seed"], 9);
    assert!(report["paper_anchor"].as_str().is_some_and(|s| !s.is_empty()));
    assert_eq!(report["grid"].as_array().unwrap().len(), 10);
    let csv = fs::read_to_string(dir.path().join("inv.csv")).unwrap();
    assert!(csv.starts_with("label,abs_residual,rel_residual\n"));
    assert_eq!(csv.lines().count(), 11);
}

#[test]
fn reruns_are_identical_up_to_runtime() {
    let dir = TempDir::new().unwrap();
    eisenstein(&dir);
    let run = |out: &str, threads: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_maasskit"))
            .args(["check", "circle-integral", "--spec", "eis/spec.json", "--out", out])
            .env("MAASSKIT_THREADS", threads)
            .current_dir(dir.path())
            .output()
            .unwrap();
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        let mut v = json(&dir.path().join(out));
        strip_runtime(&mut v);
        serde_json::to_string(&v).unwrap()
    };
    let a = run("a.json", "1");
    assert_eq!(a, run("b.json", "4"));
    assert_eq!(a, run("c.json", "1"));
}

#[test]
fn two_circles_verdicts() {
    let dir = TempDir::new().unwrap();
    let o = maasskit(&["check", "two-circles", "--family", "radial", "--eps", "1e-9", "--out", "r.json"], dir.path());
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not invariant under m2"));
    let v = json(&dir.path().join("r.json"));
    assert_eq!(v["reports"][0]["params"]["verdict"], "not invariant under m2");
    assert_eq!(v["reports"][1]["check_name"], "orbit-density");
}

#[test]
fn failing_check_exits_one() {
    let dir = TempDir::new().unwrap();
    let o = maasskit(&["check", "dirichlet-fe", "--modulus", "5", "--completion", "literal", "--out", "d.json"], dir.path());
    assert_eq!(code(&o), 1);
    assert_eq!(json(&dir.path().join("d.json"))["pass"], false);
    let ok = maasskit(&["check", "dirichlet-fe", "--modulus", "5", "--out", "e.json"], dir.path());
    assert_eq!(code(&ok), 0);
}

#[test]
fn validation_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let cases: [&[&str]; 5] = [
        &["check", "involution", "--spec", "missing.json"],
        &["check", "fe-eisenstein", "--nu", "0.25", "--modulus", "5", "--grid", "0.5:-1:1:0"],
        &["check", "quotient-gamma", "--nu", "0.25", "--tol", "-1"],
        &["check", "additive-fe", "--nu", "0.7", "--modulus", "5"],
        &["check", "nonsense"],
    ];
    for args in cases {
        let o = maasskit(args, dir.path());
        assert_eq!(code(&o), 2, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn specfun_selftest_and_merge() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&maasskit(&["specfun", "selftest", "--out", "sf.json"], dir.path())), 0);
    assert_eq!(code(&maasskit(&["check", "ellipticity", "--count", "20", "--out", "el.json"], dir.path())), 0);
    let o = maasskit(&["report", "merge", "--inputs", "sf.json", "el.json", "--out", "all.json"], dir.path());
    assert_eq!(code(&o), 0);
    let v = json(&dir.path().join("all.json"));
    assert_eq!(v["pass"], true);
    assert_eq!(v["reports"].as_array().unwrap().len(), 1 + 4 + 1);
}

#[test]
fn corpus_pipeline() {
    let dir = TempDir::new().unwrap();
    let rows = [(2, 0.5), (3, -0.3), (5, 0.1), (7, 0.2), (11, -1.1), (13, 0.9), (17, 0.0), (19, 1.4), (23, -0.6), (29, 0.3)];
    let mut text = String::from("p,lambda_re,lambda_im\n");
    for (p, l) in rows {
        text.push_str(&format!("{p},{l},0\n"));
    }
    fs::write(dir.path().join("hecke.csv"), text).unwrap();
    let o = maasskit(&["corpus", "load-hecke", "--file", "hecke.csv", "--out", "hecke.json"], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&dir.path().join("hecke.json"))["checksum"].as_str().unwrap().len(), 64);
    let o = maasskit(&["corpus", "sym2", "--hecke", "hecke.csv", "--n-max", "30", "--out", "sym2.csv"], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(fs::read_to_string(dir.path().join("sym2.csv")).unwrap().lines().count(), 31);

    let mut sigma = String::from("n,re,im\n");
    for n in 1..=60u64 {
        let s: u64 = (1..=n).filter(|d| n % d == 0).sum();
        sigma.push_str(&format!("{n},{s},0\n"));
    }
    fs::write(dir.path().join("sigma.csv"), sigma).unwrap();
    let o = maasskit(&["corpus", "deconvolve", "--coeffs", "sigma.csv", "--out", "a.csv"], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let out = fs::read_to_string(dir.path().join("a.csv")).unwrap();
    for (i, line) in out.lines().skip(1).enumerate() {
        let re: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert_eq!(re, (i + 1) as f64);
    }

    let bad = maasskit(&["corpus", "load-hecke", "--file", "sigma.csv", "--out", "x.json"], dir.path());
    assert_eq!(code(&bad), 2);
}
