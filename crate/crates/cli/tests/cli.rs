use std::process::{Command, Output};

use serde_json::Value;

fn bohr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bohr"))
        .args(args)
        .output()
        .expect("bohr binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn csv_rows(o: &Output) -> Vec<Vec<String>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(o.stdout.as_slice());
    reader
        .records()
        .map(|r| r.unwrap().iter().map(String::from).collect())
        .collect()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn solve_table_value() {
    let o = bohr(&["solve", "T31", "m=1", "p=1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let radius: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("radius"))
        .unwrap()
        .trim()
        .parse()
        .unwrap();
    assert!((radius - 0.093200).abs() <= 1e-4);
    for key in [
        "residual",
        "bracket_lo",
        "bracket_hi",
        "iterations",
        "monotone_certified",
    ] {
        assert!(text.lines().any(|l| l.starts_with(key)), "{key}");
    }
}

#[test]
fn solve_classical_bohr_value() {
    let v = json(&bohr(&[
        "solve", "T42", "m=1", "lambda=0", "--format", "json",
    ]));
    assert!((v["radius"].as_f64().unwrap() - 1.0 / 3.0).abs() <= 1e-10);
    assert_eq!(v["problem"]["id"], "T42");
    assert_eq!(v["monotone_certified"], true);
}

#[test]
fn solve_polynomial_problem() {
    let v = json(&bohr(&[
        "solve",
        "T51",
        "m=1",
        "poly=1.7777778,18.6095",
        "--format",
        "json",
    ]));
    let r = v["radius"].as_f64().unwrap();
    assert!(r > 0.0 && r < 1.0);
    assert_eq!(
        v["problem"]["params"]["poly"],
        serde_json::json!([1.7777778, 18.6095])
    );
}

#[test]
fn solve_defaults_and_flavor() {
    let a = csv_rows(&bohr(&["solve", "T43", "m=1", "p=1", "--format", "csv"]));
    let b = csv_rows(&bohr(&[
        "solve", "T43", "m=1", "p=1", "N=2", "--flavor", "dscript", "--format", "csv",
    ]));
    assert_eq!(a[0][..5], ["problem", "flavor", "m", "p", "N"]);
    assert_eq!(a[1][4], "2");
    assert_eq!(b[1][1], "Dscript");
    assert_eq!(a[1][5], b[1][5]);
}

#[test]
fn solve_usage_errors() {
    for args in [
        vec!["solve", "T99", "m=1"],
        vec!["solve", "T41", "m=1"],
        vec!["solve", "T31", "m=1", "p=1", "q=2"],
        vec!["solve", "T31", "m=0", "p=1"],
        vec!["solve", "T31", "m1", "p=1"],
        vec!["solve", "T41", "m=1", "lambda=1.5"],
        vec!["solve", "T51", "m=1", "poly=1,,2"],
        vec!["solve", "T31", "m=1", "p=1", "--tol", "0.1"],
        vec!["solve"],
    ] {
        let o = bohr(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn solve_numeric_error() {
    let o = bohr(&["solve", "T31", "m=1", "p=1", "--max-iter", "5"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("numerical error"));
}

#[test]
fn table_csv_schema() {
    let o = bohr(&["table", "3.2", "--format", "csv"]);
    let rows = csv_rows(&o);
    assert_eq!(
        rows[0],
        ["m", "p", "expected", "computed", "delta", "residual", "pass"]
    );
    assert_eq!(rows.len(), 5);
    // Row (2,1) is listed as 0.386900 but the gap function's root is 0.28688.
    assert_eq!(rows[2][..3], ["2", "1", "0.3869"]);
    assert_eq!(rows[2][6], "false");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn table_single_passing() {
    let o = bohr(&["table", "3.1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(csv_rows(&o)[1..].iter().all(|r| r[6] == "true"));
    let o = bohr(&["table", "3.3", "--format", "csv"]);
    assert_eq!(csv_rows(&o)[0][..4], ["s", "m", "p", "q"]);
}

#[test]
fn table_all() {
    let o = bohr(&["table", "all", "--format", "csv"]);
    let rows = csv_rows(&o);
    assert_eq!(rows.len(), 17);
    assert_eq!(rows[0][..5], ["table", "s", "m", "p", "q"]);
    assert_eq!(rows[1][1], "");
    let v = json(&bohr(&["table", "all", "--format", "json"]));
    assert_eq!(v["total"], 16);
    assert_eq!(v["passed"], 14);
    let plain = stdout(&bohr(&["table", "all"]));
    assert!(plain.ends_with("14/16 rows pass\n"));
}

#[test]
fn table_bad_id() {
    assert_eq!(bohr(&["table", "9"]).status.code(), Some(2));
}

#[test]
fn verify_defaults_to_json() {
    let o = bohr(&["verify", "identities"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["failures"], 0);
    let cases = v["identities"]["cases"].as_array().unwrap();
    for c in cases.iter().filter(|c| c["x"] == 0.0) {
        assert_eq!(c["delta"], 0.0);
        assert_eq!(c["closed"], 0.0);
    }
    assert!(v.get("sampling").is_none());
}

#[test]
fn verify_sharpness_marks_advisory() {
    let o = bohr(&["verify", "sharpness"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let scans = v["sharpness"].as_array().unwrap();
    let t41: Vec<&Value> = scans
        .iter()
        .filter(|s| s["problem"]["id"] == "T41")
        .collect();
    assert!(!t41.is_empty());
    assert!(t41
        .iter()
        .all(|s| s["advisory"] == true && s["pass"] == true));
    assert!(scans
        .iter()
        .filter(|s| s["advisory"] == false)
        .all(|s| s["holds_below"] == true && s["fails_above"] == true));
    assert_eq!(v["theorem51"]["pass"], true);
}

#[test]
fn verify_all_with_seed() {
    let o = bohr(&["verify", "all", "--seed", "7", "--trials", "2000"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["seed"], 7);
    assert_eq!(v["pass"], true);
    assert_eq!(v["sampling"].as_array().unwrap().len(), 16);
}

#[test]
fn verify_csv_is_long_format() {
    let rows = csv_rows(&bohr(&["verify", "area", "--format", "csv"]));
    assert_eq!(rows[0], ["suite", "case", "field", "value"]);
    assert!(rows
        .iter()
        .any(|r| r[1] == "r=0.5" && r[2] == "pass" && r[3] == "true"));
}

#[test]
fn verify_bad_suite() {
    assert_eq!(bohr(&["verify", "everything"]).status.code(), Some(2));
}

#[test]
fn sweep_lambda_from_bohr_value() {
    let rows = csv_rows(&bohr(&[
        "sweep", "T42", "lambda", "0:1:0.25", "m=1", "--format", "csv",
    ]));
    assert_eq!(rows[0][..2], ["lambda", "radius"]);
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[1][0], "0");
    assert_eq!(rows[1][1], "0.333333333333");
}

#[test]
fn sweep_radius_nonincreasing_in_lambda() {
    let rows = csv_rows(&bohr(&[
        "sweep", "T41", "lambda", "0:1:0.5", "m=1", "--format", "csv",
    ]));
    assert_eq!(rows.len(), 4);
    let radii: Vec<f64> = rows[1..].iter().map(|r| r[1].parse().unwrap()).collect();
    assert!(radii.windows(2).all(|w| w[1] <= w[0]));
}

#[test]
fn sweep_order_parameter() {
    let rows = csv_rows(&bohr(&[
        "sweep", "T31", "m", "1:4:1", "p=1", "--format", "csv",
    ]));
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[2][0], "2");
    let r: f64 = rows[2][1].parse().unwrap();
    assert!((r - 0.157800).abs() <= 1e-4);
}

#[test]
fn sweep_usage_errors() {
    for args in [
        vec!["sweep", "T42", "lambda", "0:1", "m=1"],
        vec!["sweep", "T42", "lambda", "0:1:0", "m=1"],
        vec!["sweep", "T42", "lambda", "1:0:0.1", "m=1"],
        vec!["sweep", "T42", "q", "1:2:1", "m=1"],
        vec!["sweep", "T31", "m", "1:2:0.5", "p=1"],
        vec!["sweep", "T51", "poly", "1:2:1", "m=1"],
        vec!["sweep", "T42", "lambda", "0:2:0.5", "m=1"],
    ] {
        assert_eq!(bohr(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn csv_is_plain_ascii_with_lf() {
    for args in [
        vec!["table", "all", "--format", "csv"],
        vec![
            "sweep", "T41", "lambda", "0:1:0.1", "m=1", "--format", "csv",
        ],
        vec!["verify", "area", "--format", "csv"],
    ] {
        let o = bohr(&args);
        assert!(!o.stdout.contains(&b'\r'));
        assert!(o.stdout.ends_with(b"\n"));
        let text = stdout(&o);
        for field in csv_rows(&o).into_iter().flatten() {
            if field.parse::<f64>().is_ok() {
                assert!(
                    field
                        .chars()
                        .all(|c| c.is_ascii_digit() || ".-e+".contains(c)),
                    "{field}"
                );
            }
        }
        assert!(text.is_ascii());
    }
}

#[test]
fn numbers_have_at_most_twelve_significant_digits() {
    let v = json(&bohr(&["table", "all", "--format", "json"]));
    for row in v["rows"].as_array().unwrap() {
        let text = row["computed"].to_string();
        let digits: String = text
            .split('e')
            .next()
            .unwrap()
            .chars()
            .filter(|c| c.is_ascii_digit())
            .collect();
        assert!(digits.trim_start_matches('0').len() <= 12, "{text}");
    }
}

#[test]
fn json_round_trips() {
    for args in [
        vec!["verify", "sharpness"],
        vec!["table", "all", "--format", "json"],
        vec![
            "solve", "T33", "s=2", "m=1", "p=1", "q=1", "--format", "json",
        ],
        vec![
            "sweep", "T42", "lambda", "0:1:0.1", "m=3", "--format", "json",
        ],
    ] {
        let o = bohr(&args);
        let v: Value = serde_json::from_slice(&o.stdout).unwrap();
        let mut again = serde_json::to_string_pretty(&v).unwrap();
        again.push('\n');
        assert_eq!(again.as_bytes(), o.stdout.as_slice(), "{args:?}");
    }
}

#[test]
fn help_exits_cleanly() {
    let o = bohr(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    for cmd in ["solve", "table", "verify", "sweep"] {
        assert!(stdout(&o).contains(cmd));
    }
}
