use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn tph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tph")).args(args).output().expect("binary runs")
}

fn spec(dir: &TempDir, name: &str, body: &str) -> String {
    let path: PathBuf = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn analyze_examples() {
    let dir = TempDir::new().unwrap();
    let small = spec(&dir, "small.json", r#"{"p": 2, "jumps": [{"theta": 0, "beta": [0.1, 0]}]}"#);
    let r = json(&tph(&["analyze", &small]));
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["is_invertible"], true);
    assert_eq!(r["kappa"], 0);

    let quarter = spec(&dir, "quarter.json", r#"{"p": 2, "jumps": [{"theta": 0, "beta": [0.25, 0]}]}"#);
    let r = json(&tph(&["analyze", &quarter]));
    assert_eq!(r["is_fredholm"], false);
    assert_eq!(r["boundary"], true);
    assert!(r["kappa"].is_null());

    let shift = spec(&dir, "shift.json", r#"{"p": 2, "smooth": {"winding": 1}}"#);
    let r = json(&tph(&["analyze", &shift]));
    assert_eq!(r["kappa"], 1);
    assert_eq!(r["index"], -1);
    assert_eq!(r["dim_coker"], 1);
    assert_eq!(r["dim_ker"], 0);
}

#[test]
fn report_goes_to_out_file() {
    let dir = TempDir::new().unwrap();
    let s = spec(&dir, "s.json", r#"{"p": 3}"#);
    let out = dir.path().join("report.json");
    let o = tph(&["analyze", &s, "--out", out.to_str().unwrap()]);
    assert!(o.status.success() && o.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(r["p"], 3.0);
}

#[test]
fn invalid_specs_exit_with_one() {
    let dir = TempDir::new().unwrap();
    let cases = [
        ("unknown.json", r#"{"p": 2, "colour": 1}"#, "colour"),
        ("degrees.json", r#"{"p": 2, "jumps": [{"theta": 90, "beta": [0.1, 0]}]}"#, "radians"),
        ("short.json", r#"{"p": 2, "jumps": [{"theta": 0, "beta": [0.1]}]}"#, "jumps[0].beta"),
        ("lowp.json", r#"{"p": 1}"#, "p"),
        (
            "dup.json",
            r#"{"p": 2, "jumps": [{"theta": 0, "beta": [0.1, 0]}, {"theta": 6.283185307179586, "beta": [0.2, 0]}]}"#,
            "same location",
        ),
        ("syntax.json", "{\"p\": 2,\n \"jumps\": [}", "line 2"),
    ];
    for (name, body, needle) in cases {
        let s = spec(&dir, name, body);
        let o = tph(&["analyze", &s]);
        assert_eq!(code(&o), 1, "{name}");
        assert!(stderr(&o).contains(needle), "{name}: {}", stderr(&o));
    }
    assert_eq!(code(&tph(&["analyze", "/nonexistent/spec.json"])), 1);
    assert_eq!(code(&tph(&["frobnicate"])), 1);
}

#[test]
fn factorize_examples() {
    let dir = TempDir::new().unwrap();
    let small = spec(&dir, "small.json", r#"{"p": 2, "jumps": [{"theta": 0, "beta": [0.1, 0]}]}"#);
    let r = json(&tph(&["factorize", &small, "--grid", "512"]));
    let minus = r["minus_terms"].as_array().unwrap();
    assert_eq!(minus.len(), 1);
    assert_eq!(minus[0]["base"], "1 - t_r t^-1");
    assert_eq!(minus[0]["theta_r"], 0.0);
    assert!((minus[0]["exponent"][0].as_f64().unwrap() + 0.2).abs() < 1e-15);
    let zero = r["zero_terms"].as_array().unwrap();
    assert_eq!(zero.len(), 1);
    assert_eq!(zero[0]["base"], "|1 - t t_r^-1|");
    assert!((zero[0]["exponent"][0].as_f64().unwrap() - 0.2).abs() < 1e-15);
    assert!(r["defects"]["residual"].as_f64().unwrap() < 1e-10);
    assert!(r["defects"]["max_defect"].as_f64().unwrap() < 1e-8);

    let shifted =
        spec(&dir, "shifted.json", r#"{"p": 2, "smooth": {"winding": 1}, "jumps": [{"theta": 0, "beta": [0.1, 0]}]}"#);
    let r = json(&tph(&["factorize", &shifted, "--grid", "512"]));
    assert_eq!(r["t_power"], 1);

    let quarter = spec(&dir, "quarter.json", r#"{"p": 2, "jumps": [{"theta": 0, "beta": [0.25, 0]}]}"#);
    let o = tph(&["factorize", &quarter]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("not Fredholm"));
    assert_eq!(code(&tph(&["factorize", &small, "--grid", "16"])), 1);
}

fn parse_matrix(text: &str) -> Vec<Vec<(f64, f64)>> {
    let mut lines = text.lines();
    let n: usize = lines.next().unwrap().parse().unwrap();
    let rows: Vec<Vec<(f64, f64)>> = lines
        .map(|l| {
            l.split(',')
                .map(|cell| {
                    let (re, im) = cell.split_once(':').unwrap();
                    (re.parse().unwrap(), im.parse().unwrap())
                })
                .collect()
        })
        .collect();
    assert_eq!(rows.len(), n);
    assert!(rows.iter().all(|r| r.len() == n));
    rows
}

#[test]
fn matrix_examples() {
    let dir = TempDir::new().unwrap();
    let t = spec(&dir, "t.json", r#"{"p": 2, "smooth": {"winding": 1}}"#);
    let one = spec(&dir, "one.json", r#"{"p": 2}"#);
    let tinv = spec(&dir, "tinv.json", r#"{"p": 2, "smooth": {"winding": -1}}"#);

    let o = tph(&["matrix", &t, "--operator", "H", "-n", "2"]);
    let h = parse_matrix(&String::from_utf8(o.stdout).unwrap());
    assert_eq!(h, vec![vec![(1.0, 0.0), (0.0, 0.0)], vec![(0.0, 0.0), (0.0, 0.0)]]);

    let o = tph(&["matrix", &one, "--operator", "T", "-n", "3"]);
    let id = parse_matrix(&String::from_utf8(o.stdout).unwrap());
    for (j, row) in id.iter().enumerate() {
        for (k, v) in row.iter().enumerate() {
            assert_eq!(*v, (if j == k { 1.0 } else { 0.0 }, 0.0));
        }
    }

    let o = tph(&["matrix", &tinv, "--operator", "M", "-n", "3"]);
    let m = parse_matrix(&String::from_utf8(o.stdout).unwrap());
    for (j, row) in m.iter().enumerate() {
        for (k, v) in row.iter().enumerate() {
            assert_eq!(*v, (if k == j + 1 { 1.0 } else { 0.0 }, 0.0));
        }
    }

    let o = tph(&["matrix", &one, "--operator", "Phi", "-n", "2"]);
    let phi = parse_matrix(&String::from_utf8(o.stdout).unwrap());
    assert!((phi[0][0].0 - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);

    assert_eq!(code(&tph(&["matrix", &one, "--operator", "X", "-n", "2"])), 1);
    assert_eq!(code(&tph(&["matrix", &one, "--operator", "T", "-n", "0"])), 1);
}

fn parse_csv(text: &str) -> Vec<(String, f64, f64, f64)> {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("z,re,im,modulus"));
    lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].to_string(), f[1].parse().unwrap(), f[2].parse().unwrap(), f[3].parse().unwrap())
        })
        .collect()
}

#[test]
fn mellin_sweep_examples() {
    let dir = TempDir::new().unwrap();
    let smooth = spec(&dir, "smooth.json", r#"{"p": 2, "smooth": {"winding": 1, "log_coeffs": {"2": [0.2, 0.1]}}}"#);
    let rows =
        parse_csv(&String::from_utf8(tph(&["mellin-sweep", &smooth, "--tau", "1", "--steps", "128"]).stdout).unwrap());
    assert!(rows.len() >= 131);
    let first = rows[0].3;
    assert!(rows.iter().all(|r| (r.3 - first).abs() < 1e-12));
    assert_eq!(rows[rows.len() - 2].0, "+inf");
    assert_eq!(rows[rows.len() - 1].0, "-inf");

    let quarter = spec(&dir, "quarter.json", r#"{"p": 2, "jumps": [{"theta": 0, "beta": [0.25, 0]}]}"#);
    let rows = parse_csv(&String::from_utf8(tph(&["mellin-sweep", &quarter, "--tau", "1"]).stdout).unwrap());
    assert!(rows.iter().map(|r| r.3).fold(f64::INFINITY, f64::min) < 1e-6);

    let one = spec(&dir, "one.json", r#"{"p": 2}"#);
    for tau in ["i", "-i", "angle:1.2"] {
        let rows = parse_csv(
            &String::from_utf8(tph(&["mellin-sweep", &one, "--tau", tau, "--z-max", "5", "--steps", "64"]).stdout)
                .unwrap(),
        );
        assert!(rows.iter().all(|r| (r.1 - 4.0).abs() < 1e-12 && r.2.abs() < 1e-12), "{tau}");
    }
    assert_eq!(code(&tph(&["mellin-sweep", &one, "--tau", "2"])), 1);
    assert_eq!(code(&tph(&["mellin-sweep", &one, "--tau", "1", "--steps", "8"])), 1);
}

#[test]
fn verify_spec_file() {
    let dir = TempDir::new().unwrap();
    let one = spec(&dir, "one.json", r#"{"p": 2}"#);
    let r = json(&tph(&["verify", &one, "--trials", "4", "--sizes", "16,32"]));
    assert_eq!(r["passed"], true);
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));

    let p3 = spec(&dir, "p3.json", r#"{"p": 3, "jumps": [{"theta": 1, "beta": [0.1, 0.1]}]}"#);
    let r = json(&tph(&["verify", &p3, "--trials", "4", "--grid", "512"]));
    assert_eq!(r["passed"], true);
    assert!(r["checks"].as_array().unwrap().iter().any(|c| c["passed"].is_null()));

    let corrupt = spec(&dir, "corrupt.json", r#"{"p": 2, "jumps": [{"theta": 0}]}"#);
    assert_eq!(code(&tph(&["verify", &corrupt])), 1);
}

#[test]
fn verify_suites() {
    let r = json(&tph(&["verify", "identities", "--trials", "5", "--seed", "3"]));
    assert_eq!(r["checks"].as_array().unwrap().len(), 3);
    assert_eq!(r["passed"], true);
    let r = json(&tph(&["verify", "formal-inverse", "--trials", "3"]));
    assert_eq!(r["passed"], true);
    let r = json(&tph(&["verify", "probe", "--sizes", "16,32"]));
    assert!(r["checks"].as_array().unwrap().len() >= 30);
    assert_eq!(r["passed"], true);
}
