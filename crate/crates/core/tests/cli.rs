use std::io::Write;
use std::process::Command;

use arrangements::cli::{self, parse_arrangement};
use arrangements::series::BuiltinFamily;
use arrangements::{Arrangement, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;
use serde_json::Value;

fn run(args: &[&str]) -> cli::Outcome {
    cli::run(std::iter::once("arrangements").chain(args.iter().copied()))
}

fn temp_file(name: &str, text: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("arrangements-cli-{}-{name}", std::process::id()));
    std::fs::File::create(&path)
        .unwrap()
        .write_all(text.as_bytes())
        .unwrap();
    path
}

#[test]
fn goldens() {
    let out = run(&["series", "--builtin", "braid:3", "--degree", "4"]);
    assert_eq!((out.code, out.stdout.trim()), (0, "1 3 5 7 9"));

    let out = run(&["poincare", "--builtin", "boolean:2"]);
    assert_eq!((out.code, out.stdout.trim()), (0, "1 2 1"));

    let out = run(&["verify", "--builtin", "braid:3", "--max-degree", "3"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.trim_end().ends_with("checks passed"));
    assert!(!out.stdout.contains("FAIL"));
}

#[test]
fn closed_forms() {
    let out = run(&["series", "--free", "0,1,2,3", "--degree", "3"]);
    assert_eq!(out.stdout.trim(), "1 6 17 34");
    let out = run(&["series", "--generic", "5,3", "--degree", "2"]);
    assert_eq!(out.stdout.trim(), "1 5 15");
    let out = run(&["series", "--generic", "5", "3", "--degree", "2"]);
    assert_eq!(out.stdout.trim(), "1 5 15");
}

#[test]
fn file_input_matches_builtin() {
    let path = temp_file("braid.txt", "# braid\n3\n1 -1 0\n0 1 -1\n1 0 -1\n");
    let p = path.to_str().unwrap();
    for cmd in ["lattice", "poincare", "nbc"] {
        let from_file = run(&[cmd, p]);
        let builtin = run(&[cmd, "--builtin", "braid:3"]);
        assert_eq!(from_file.code, 0);
        assert_eq!(from_file.stdout, builtin.stdout, "{cmd}");
    }
    std::fs::remove_file(path).unwrap();
}

#[test]
fn exit_code_matrix() {
    let bad_file = temp_file("bad.txt", "2\n1 0\n1/0 1\n");
    let bad = bad_file.to_str().unwrap();
    let valid: &[&[&str]] = &[
        &["lattice", "--builtin", "braid:3"],
        &["poincare", "--builtin", "boolean:3"],
        &["nbc", "--builtin", "generic:4,2"],
        &["series", "--builtin", "braid:4", "--degree", "5"],
        &["verify", "--builtin", "boolean:2", "--max-degree", "2"],
        &["decompose", "--builtin", "braid:3", "--tuple", "2,3"],
        &["lattice", "--builtin", "braid:3", "--order", "3,1,2"],
    ];
    let invalid: &[&[&str]] = &[
        &[],
        &["frobnicate"],
        &["lattice"],
        &["lattice", "--builtin", "cube:3"],
        &["lattice", bad],
        &["lattice", "/nonexistent/arrangement.txt"],
        &["series", "--builtin", "braid:3", "--degree", "-1"],
        &["series", "--generic", "5,3,1"],
        &["lattice", "--builtin", "braid:3", "--order", "1,1,2"],
        &["decompose", "--builtin", "braid:3", "--tuple", "0,1"],
        &["decompose", "--builtin", "braid:3", "--tuple", "4"],
        &["verify", "--builtin", "generic:5,3", "--max-degree", "3", "--budget", "10"],
    ];
    for args in valid {
        let out = run(args);
        assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    }
    for args in invalid {
        let out = run(args);
        assert_eq!(out.code, 2, "{args:?}: {}", out.stdout);
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    std::fs::remove_file(bad_file).unwrap();
}

#[test]
fn parse_errors_name_the_line() {
    let path = temp_file("arity.txt", "3\n# ok\n1 0 0\n1 2\n");
    let out = run(&["poincare", path.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line 4"), "{}", out.stderr);
    std::fs::remove_file(path).unwrap();
}

/// Every integer token of a text line, in order.
fn integers(text: &str) -> Vec<i64> {
    text.split(|c: char| !(c.is_ascii_digit() || c == '-'))
        .filter_map(|w| w.parse().ok())
        .collect()
}

#[test]
fn json_matches_text() {
    let text = run(&["series", "--builtin", "braid:4", "--degree", "6"]);
    let json: Value = serde_json::from_str(&run(&["series", "--builtin", "braid:4", "--degree", "6", "--json"]).stdout).unwrap();
    let from_json: Vec<i64> = json["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_i64().unwrap())
        .collect();
    assert_eq!(integers(&text.stdout), from_json);

    let text = run(&["lattice", "--builtin", "braid:3"]);
    let json: Value = serde_json::from_str(&run(&["lattice", "--builtin", "braid:3", "--json"]).stdout).unwrap();
    let flats = json["flats"].as_array().unwrap();
    for (line, f) in text.stdout.lines().skip(2).zip(flats) {
        let mut expected = vec![f["id"].as_i64().unwrap(), f["codim"].as_i64().unwrap(), f["mobius"].as_i64().unwrap()];
        expected.extend(f["support"].as_array().unwrap().iter().map(|v| v.as_i64().unwrap()));
        assert_eq!(integers(line), expected, "{line}");
    }
    assert_eq!(text.stdout.lines().count() - 2, flats.len());

    let text = run(&["verify", "--builtin", "braid:3", "--max-degree", "3"]);
    let json: Value =
        serde_json::from_str(&run(&["verify", "--builtin", "braid:3", "--max-degree", "3", "--json"]).stdout).unwrap();
    for (line, row) in text.stdout.lines().skip(1).zip(json["rows"].as_array().unwrap()) {
        let mut expected: Vec<i64> = ["degree", "dim_c", "dim_ao", "dim_j", "dim_del_plus_c"]
            .iter()
            .map(|k| row[k].as_i64().unwrap())
            .collect();
        expected.extend(row["per_flat"].as_array().unwrap().iter().map(|v| v.as_i64().unwrap()));
        assert_eq!(integers(line), expected, "{line}");
    }
    assert_eq!(json["passed"], Value::Bool(true));
}

#[test]
fn decompose_json_matches_text() {
    let text = run(&["decompose", "--builtin", "boolean:2", "--tuple", "1,1,2"]);
    let json: Value =
        serde_json::from_str(&run(&["decompose", "--builtin", "boolean:2", "--tuple", "1,1,2", "--json"]).stdout).unwrap();
    let terms = json["terms"].as_array().unwrap();
    let lines: Vec<&str> = text.stdout.lines().filter(|l| l.contains(" * D[")).collect();
    assert_eq!(lines.len(), terms.len());
    for (line, t) in lines.iter().zip(terms) {
        assert!(line.starts_with(&format!("{} * ", t["coefficient"].as_str().unwrap())));
        assert!(line.ends_with(&format!("on flat {}", t["flat"])));
    }
    assert_eq!(json["verified"], Value::Bool(true));
    assert!(json["residue"].is_array());
}

#[test]
fn real_binary() {
    let bin = env!("CARGO_BIN_EXE_arrangements");
    let out = Command::new(bin)
        .args(["series", "--builtin", "braid:3", "--degree", "4"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "1 3 5 7 9");

    let out = Command::new(bin).arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());

    let out = Command::new(bin).arg("--help").output().unwrap();
    assert!(out.status.success());
}

fn same_forms(a: &Arrangement, b: &Arrangement) -> bool {
    a.dim() == b.dim() && a.forms() == b.forms()
}

#[test]
fn serialize_round_trip_on_suite() {
    for name in ["braid:3", "braid:4", "boolean:2", "boolean:3", "generic:4,2", "generic:5,2", "generic:5,3"] {
        let arr = name.parse::<BuiltinFamily>().unwrap().build().unwrap();
        let back = parse_arrangement(&arr.to_file_string()).unwrap();
        assert!(same_forms(&arr, &back), "{name}");
    }
}

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

proptest! {
    #[test]
    fn serialize_round_trip(dim in 1usize..=4, rows in prop::collection::vec(prop::collection::vec(rational(), 4), 0..6)) {
        let rows: Vec<Vec<Rational>> = rows.into_iter().map(|r| r[..dim].to_vec()).collect();
        if let Ok(arr) = Arrangement::new(dim, rows) {
            let back = parse_arrangement(&arr.to_file_string()).unwrap();
            prop_assert!(same_forms(&arr, &back));
        }
    }
}
