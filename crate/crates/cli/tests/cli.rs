use dirichlet_bounds::constants::j01;
use dirichlet_bounds::spec_file::{parse_spec, spec_to_json};
use dirichlet_bounds::{catalogue, CatalogueOptions};
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dirichlet-bounds"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

#[test]
fn bounds_csv_for_identity_disc() {
    let path = fixture("identity_disc.json");
    let o = run(&["--out", "csv", "bounds", "--spec", path.to_str().unwrap()]);
    assert!(o.status.success());
    let (header, rows) = csv_rows(&stdout(&o));
    assert_eq!(header, ["method", "value", "valid", "preconditions", "notes"]);
    let theorem_a = rows.iter().find(|r| r[0] == "TheoremA").unwrap();
    let v: f64 = theorem_a[1].parse().unwrap();
    assert!((v - j01().powi(2)).abs() < 1e-4);
    assert!(rows.iter().all(|r| r[2] == "true"));
}

#[test]
fn bounds_text_names_the_best() {
    let path = fixture("exp_ln2.json");
    let o = run(&["bounds", "--spec", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("best: TheoremA 5.38"));
}

#[test]
fn table_csv_has_one_column_per_width() {
    let o = run(&["--out", "csv", "table", "--example", "sin", "--d", "1/2,1/3,1/4,1/8"]);
    assert!(o.status.success());
    let (header, rows) = csv_rows(&stdout(&o));
    assert_eq!(header.len(), 5);
    assert_eq!(rows.iter().map(|r| r[0].as_str()).collect::<Vec<_>>(), ["Makai", "RFK", "Estimate"]);
    let makai: f64 = rows[0][2].parse().unwrap();
    assert!((makai - 2.25).abs() < 1e-9);
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(run(&["table", "--example", "exp", "--d", ""]).status.code(), Some(2));
    assert_eq!(run(&["table", "--example", "exp", "--d", "1,,2"]).status.code(), Some(2));
    assert_eq!(run(&["table", "--example", "tan", "--d", "1"]).status.code(), Some(2));
    assert_eq!(run(&["table", "--example", "exp", "--d", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["bounds", "--spec", "/does/not/exist.json"]).status.code(), Some(2));
    let mut bad = tempfile::NamedTempFile::new().unwrap();
    write!(bad, r#"{{"base": {{"type": "disc", "radius": 1}}, "map": {{"type": "tan"}}}}"#).unwrap();
    let o = run(&["bounds", "--spec", bad.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn gap_on_rectangle_base_exits_3() {
    let path = fixture("exp_d1.json");
    let o = run(&["gap", "--spec", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("gap bound requires unit-disc base"));
}

#[test]
fn gap_on_convex_disc() {
    let path = fixture("convex_disc.json");
    let o = run(&["--out", "csv", "gap", "--spec", path.to_str().unwrap()]);
    assert!(o.status.success());
    let (_, rows) = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 2);
    for r in rows {
        let v: f64 = r[1].parse().unwrap();
        assert!((v - 8.89878).abs() < 1e-4);
    }
}

#[test]
fn check_regularity_reports_each_exponent() {
    let path = fixture("sin_d0.5.json");
    let o = run(&["check-regularity", "--spec", path.to_str().unwrap(), "--alphas", "3,4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("conformal regular: yes"));
    assert_eq!(text.lines().filter(|l| l.ends_with("yes")).count(), 3);
}

#[test]
fn oracle_csv_on_scaled_disc() {
    let path = fixture("scaled_disc.json");
    let o = run(&["--out", "csv", "oracle", "--spec", path.to_str().unwrap(), "--h", "1/64"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let (header, rows) = csv_rows(&stdout(&o));
    assert_eq!(header, ["method", "value", "valid", "reference", "tightness", "pass"]);
    assert!(rows.iter().all(|r| r[5] == "true"));
}

#[test]
fn fixtures_round_trip() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let original: serde_json::Value = serde_json::from_str(&text).unwrap();
        let spec = parse_spec(&text).unwrap();
        assert!(!catalogue(&spec, &CatalogueOptions::default()).unwrap().is_empty());
        assert_eq!(spec_to_json(&spec), original, "{}", path.display());
        seen += 1;
    }
    assert_eq!(seen, 7);
}
