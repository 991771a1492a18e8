use std::fmt::Write as _;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_schwarzian-lab"));
    c.env_remove("SCHWARZIAN_LAB_THREADS").env_remove("RUST_BACKTRACE");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn series_file(dir: &tempfile::TempDir, name: &str, order: usize, coeffs: &[(usize, f64)]) -> String {
    let mut s = format!("# {name}\norder {order}\n");
    for (n, re) in coeffs {
        writeln!(s, "{n} {re} 0").unwrap();
    }
    let path = dir.path().join(name);
    std::fs::write(&path, s).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn bounds_at_the_origin_of_the_class() {
    let rows = csv_rows(&stdout(&["bounds", "--alpha", "0", "--beta", "0"]));
    assert_eq!(
        rows[0],
        ["alpha", "beta", "d", "regime", "lambda", "schwarzian_bound", "preschwarzian_bound"]
    );
    assert_eq!(rows.len(), 2);
    let r = &rows[1];
    assert_eq!(r[5], "2");
    assert_eq!(r[6], "4");
}

#[test]
fn degree_suffix_matches_radians() {
    let deg = stdout(&["bounds", "--alpha", "30deg", "--beta", "0.2", "--format", "json"]);
    let rad = stdout(&["bounds", "--alpha", "0.523598775598299rad", "--beta", "0.2", "--format", "json"]);
    let a: Value = serde_json::from_str(&deg).unwrap();
    let b: Value = serde_json::from_str(&rad).unwrap();
    let bound = |v: &Value| v[0]["schwarzian_bound"].as_f64().unwrap();
    assert!((bound(&a) - bound(&b)).abs() < 1e-13);
}

#[test]
fn range_output_is_byte_identical_across_runs_and_thread_counts() {
    let args = ["bounds", "--alpha-range", "-1.2:1.2:0.1", "--beta-range", "0:0.9:0.05"];
    let a = stdout(&args);
    let b = stdout(&args);
    let c = bin()
        .args(args)
        .env("SCHWARZIAN_LAB_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a, b);
    assert_eq!(a.as_bytes(), c.stdout.as_slice());
    assert_eq!(csv_rows(&a).len(), 1 + 25 * 19);
}

#[test]
fn empty_range_prints_only_the_header() {
    let text = stdout(&["bounds", "--alpha-range", "1:0:0.1"]);
    assert_eq!(text.lines().count(), 1);
}

#[test]
fn bad_input_exits_nonzero() {
    for args in [
        vec!["bounds", "--alpha", "2"],
        vec!["bounds", "--beta", "1"],
        vec!["bounds", "--alpha-range", "0:1:0"],
        vec!["bounds", "--alpha", "abc"],
        vec!["bounds", "--format", "svg"],
        vec!["norm", "/nonexistent/series.txt"],
    ] {
        let out = run(&args);
        assert!(!out.status.success(), "{args:?} should fail");
        assert!(!out.stderr.is_empty(), "{args:?} should explain");
    }
    let out = bin()
        .args(["bounds"])
        .env("SCHWARZIAN_LAB_THREADS", "0")
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("SCHWARZIAN_LAB_THREADS"));
}

#[test]
fn out_flag_writes_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.json");
    let out = run(&["bounds", "--alpha", "0.1,0.2", "--format", "json", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
}

#[test]
fn sharpness_ratios_approach_one() {
    let text = stdout(&["sharpness", "--alpha", "0", "--beta", "0,0.75", "--z0", "0.5,0.99"]);
    let rows = csv_rows(&text);
    let ratio = rows[0].iter().position(|c| c == "ratio").unwrap();
    let z0 = rows[0].iter().position(|c| c == "z0").unwrap();
    for r in &rows[1..] {
        let v: f64 = r[ratio].parse().unwrap();
        assert!(v > 0.0 && v <= 1.0 + 1e-12, "{r:?}");
        if r[z0] == "0.99" {
            assert!(v > 0.95, "{r:?}");
        }
    }
}

#[test]
fn verify_passes_and_fault_injection_fails() {
    let base = ["verify", "--alpha", "0", "--beta", "0.25", "--z0", "0.5", "--cases", "2"];
    let ok = run(&base);
    assert!(ok.status.success(), "{}", String::from_utf8_lossy(&ok.stdout));

    let mut bad: Vec<&str> = base.to_vec();
    bad.extend(["--perturb-b", "0.01"]);
    let out = run(&bad);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    let failed: Vec<&str> = text
        .lines()
        .skip(1)
        .filter(|l| l.split(',').nth(1) == Some("false"))
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert!(failed.contains(&"sharpness_identity"), "{text}");
    assert!(failed.contains(&"phi_admissibility"), "{text}");
}

#[test]
fn norm_of_series_files() {
    let dir = tempfile::tempdir().unwrap();

    let ident = series_file(&dir, "ident.txt", 3, &[(1, 1.0)]);
    let rows = csv_rows(&stdout(&["norm", &ident]));
    assert_eq!(rows.len(), 3);
    assert!(rows[1..].iter().all(|r| r[2] == "0"), "{rows:?}");

    // z/(1-z): P = 2/(1-z), so (1-r^2)|P| -> 4 at the boundary; S = 0
    let geo: Vec<(usize, f64)> = (1..=3000).map(|n| (n, 1.0)).collect();
    let geo = series_file(&dir, "geo.txt", 3000, &geo);
    let v: Value = serde_json::from_str(&stdout(&["norm", &geo, "--format", "json"])).unwrap();
    let p = v[0]["value"].as_f64().unwrap();
    assert_eq!(v[0]["quantity"], "preschwarzian");
    assert!((p - 4.0).abs() < 0.01, "{p}");
    assert!(v[1]["value"].as_f64().unwrap().abs() < 1e-9);

    let flat = series_file(&dir, "flat.txt", 3, &[(2, 1.0)]);
    let out = run(&["norm", &flat]);
    assert!(!out.status.success());

    let scaled = series_file(&dir, "scaled.txt", 3, &[(1, 2.0), (2, 1.0)]);
    assert!(!run(&["norm", &scaled]).status.success());
    let text = stdout(&["norm", &scaled, "--skip-normalization"]);
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn plots() {
    let svg = stdout(&["plot", "--alpha-range", "-0.6:0.6:0.1", "--beta-range", "0:0.9:0.1"]);
    assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
    assert!(svg.contains(r#"id="regime-curve""#));

    let csv = stdout(&["plot", "--kind", "radial", "--points", "50", "--format", "csv"]);
    let rows = csv_rows(&csv);
    assert_eq!(rows[0], ["r", "value"]);
    assert_eq!(rows.len(), 51);

    let svg = stdout(&["plot", "--kind", "radial", "--quantity", "preschwarzian", "--angle", "45deg"]);
    assert!(svg.contains(r#"id="profile""#));
    assert!(svg.contains(r#"id="level""#));
}
