use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn madelung(args: &[&str], dataset_env: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_madelung"));
    cmd.args(args);
    match dataset_env {
        Some(v) => cmd.env("MADELUNG_DATASET", v),
        None => cmd.env_remove("MADELUNG_DATASET"),
    };
    cmd.output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn aufbau_molybdenum() {
    let out = madelung(&["aufbau", "--z", "42", "--classify"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["command"], "aufbau");
    assert_eq!(v["results"]["configuration"][0]["predicted"], "[Kr] 4d4 5s2");
    assert_eq!(v["results"]["classification"][0]["status"], "exceptional");
    assert_eq!(v["results"]["classification"][0]["experimental"], "[Kr] 4d5 5s1");
}

#[test]
fn bdg_example() {
    let v = json(&madelung(&["bdg", "--epsilon", "3", "--delta", "4"], None));
    let row = &v["results"]["eigen"][0];
    assert_eq!(row["e_plus"], 5.0);
    assert_eq!(row["e_minus"], -5.0);
}

#[test]
fn richardson_two_level() {
    let v = json(&madelung(
        &["richardson", "--levels", "0,1", "--g", "0.5", "--pairs", "1"],
        None,
    ));
    let total = v["results"]["summary"][0]["total_energy"].as_f64().unwrap();
    assert!((total - (1.0 - 5f64.sqrt()) / 2.0).abs() < 1e-12);
}

#[test]
fn negative_values_are_accepted() {
    let out = madelung(&["bdg", "--epsilon", "-3", "--delta", "-4"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["results"]["eigen"][0]["e_plus"], 5.0);
}

#[test]
fn domain_errors_exit_one() {
    let out = madelung(&["aufbau", "--z", "500"], None);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("500"));

    let out = madelung(&["richardson", "--levels", "0,1", "--g", "0.5", "--pairs", "3"], None);
    assert_eq!(out.status.code(), Some(1));

    let out = madelung(&["bdg", "--epsilon", "x", "--delta", "1"], None);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_is_repeatable() {
    for format in ["json", "csv"] {
        let a = madelung(&["verify", "--format", format], None);
        let b = madelung(&["verify", "--format", format], None);
        assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stdout));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn csv_carries_the_json_numbers() {
    let j = json(&madelung(&["dirac", "--z", "80", "--n-r", "1", "--kappa", "-2"], None));
    let out = madelung(
        &["dirac", "--z", "80", "--n-r", "1", "--kappa", "-2", "--format", "csv"],
        None,
    );
    let text = String::from_utf8(out.stdout).unwrap();
    let section: Vec<&str> = text
        .lines()
        .skip_while(|l| *l != "# level")
        .skip(1)
        .collect();
    let header: Vec<&str> = section[0].split(',').collect();
    let values: Vec<&str> = section[1].split(',').collect();
    let row = &j["results"]["level"][0];
    for (col, cell) in header.iter().zip(values) {
        match &row[*col] {
            Value::Number(n) => assert_eq!(cell.parse::<f64>().unwrap(), n.as_f64().unwrap(), "{col}"),
            Value::String(s) => assert_eq!(cell, s),
            other => panic!("unexpected {other}"),
        }
    }
}

fn corrupted_dataset(bad_row: &str) -> tempfile::NamedTempFile {
    let bundled = include_str!("../../core/data/elements.csv");
    let original = bundled.lines().find(|l| l.starts_with("24,Cr,")).unwrap();
    let corrupted = bundled.replacen(original, bad_row, 1);
    assert_ne!(corrupted, bundled);
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(corrupted.as_bytes()).unwrap();
    file
}

#[test]
fn capacity_violation_is_pointed_out() {
    // 24 electrons, but 4s holds at most 2
    let file = corrupted_dataset("24,Cr,[Ar] 3d3 4s3");
    let path = file.path().to_str().unwrap();
    let out = madelung(&["verify", "--dataset-path", path], None);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let rows = v["results"]["properties"].as_array().unwrap();
    let failed: Vec<&Value> = rows.iter().filter(|r| r["status"] == "fail").collect();
    assert_eq!(failed.len(), 3);
    for row in failed {
        assert_eq!(row["module"], "shells");
        let detail = row["detail"].as_str().unwrap();
        assert!(detail.contains("4s") && detail.contains("capacity"), "{detail}");
    }
}

#[test]
fn corrupted_dataset_fails_verify() {
    let file = corrupted_dataset("24,Cr,[Ar] 3q5 4s1 junk");
    let path = file.path().to_str().unwrap();

    let out = madelung(&["verify", "--dataset-path", path], None);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let rows = v["results"]["properties"].as_array().unwrap();
    let failed: Vec<&Value> = rows.iter().filter(|r| r["status"] == "fail").collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|r| r["module"] == "shells"));
    assert!(failed[0]["detail"].as_str().unwrap().contains("line"));

    // the environment variable wins over the flag
    let out = madelung(&["verify", "--dataset-path", path], Some(""));
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn empty_dataset_path_skips() {
    let out = madelung(&["verify", "--dataset-path", ""], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let skipped = v["results"]["summary"][0]["skipped"].as_i64().unwrap();
    assert_eq!(skipped, 3);

    let out = madelung(&["classify", "--z", "24"], Some(""));
    assert_eq!(out.status.code(), Some(0));
    assert!(!json(&out)["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn missing_dataset_file_is_an_error() {
    let out = madelung(&["classify", "--z", "24", "--dataset-path", "/nonexistent/x.csv"], None);
    assert_eq!(out.status.code(), Some(1));
}
