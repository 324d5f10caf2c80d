use serde_json::Value;
use std::collections::BTreeSet;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superspherical")).args(args).env_remove("SUPERSPHERICAL_OUT_DIR").output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

/// Data lines of a CSV artifact, skipping the config comment and header.
fn csv_rows(text: &str) -> Vec<Vec<String>> {
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# config: "));
    lines.skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn gl02_standard_is_not_spherical() {
    let v = json(&["spherical", "--algebra", "gl", "--m", "0", "--n", "2", "--rep", "standard"]);
    assert_eq!(v["result"]["verdict"], "NOT_SPHERICAL");
    assert_eq!(v["config"]["seed"], 24301);
}

#[test]
fn malformed_flags_exit_64() {
    assert_eq!(run(&["spherical", "--algebra", "gl", "--n", "x"]).status.code(), Some(64));
    assert_eq!(run(&["nonsense"]).status.code(), Some(64));
    assert_eq!(run(&["spherical", "--algebra", "gl", "--n", "2", "--rep", "wedge"]).status.code(), Some(64));
    assert_eq!(run(&["hyperborels", "--algebra", "gl", "--m", "1", "--n", "1", "--positivity", "1"]).status.code(), Some(64));
    assert_eq!(run(&["hyperborels", "--algebra", "xx", "--n", "1"]).status.code(), Some(64));
    assert_eq!(run(&["figure", "--format", "dot"]).status.code(), Some(64));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn figures_match_the_expected_point_sets() {
    for (borel, keep) in [("upper", (|_: i64, j: i64| j >= 1) as fn(i64, i64) -> bool), ("lower", |i, _| i >= 1)] {
        let out = run(&["figure", "--example", "gl12-s2", "--borel", borel, "--format", "csv", "--degree", "6"]);
        assert!(out.status.success());
        let got: BTreeSet<(i64, i64)> = csv_rows(&String::from_utf8(out.stdout).unwrap())
            .iter()
            .map(|r| (r[0].parse().unwrap(), r[1].parse().unwrap()))
            .collect();
        let mut want = BTreeSet::new();
        for i in 0..=6 {
            for j in 0..=6 - i {
                if (i, j) == (0, 0) || keep(i, j) {
                    want.insert((i, j));
                }
            }
        }
        assert_eq!(got, want, "{borel}");
    }
}

#[test]
fn svg_figure_is_a_plain_scatter() {
    let out = run(&["figure", "--example", "gl12-s2", "--degree", "4"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.starts_with("<svg"));
    assert!(s.contains("<!-- config: "));
    // {(0,0)} and the points with j >= 1 in i + j <= 4.
    assert_eq!(s.matches(r#"fill="black""#).count(), 11);
}

#[test]
fn tables_match_at_small_sizes() {
    let dir = tempfile::tempdir().unwrap();
    for (table, flag) in [("spherical-reps", "--max-rank"), ("symmetric-pairs", "--max-size")] {
        let path = dir.path().join(format!("{table}.csv"));
        let out = run(&["table", table, flag, "2", "--out", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        let rows = csv_rows(&std::fs::read_to_string(&path).unwrap());
        assert!(!rows.is_empty());
        assert!(rows.iter().all(|r| r.last().unwrap() != "MISMATCH"), "{table}");
    }
}

#[test]
fn outputs_are_deterministic() {
    let args = ["monoid", "--algebra", "gl", "--m", "1", "--n", "2", "--rep", "S2", "--degree", "4"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["table", "symmetric-pairs", "--max-size", "1"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn relative_output_goes_to_the_output_directory() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_superspherical"))
        .args(["hyperborels", "--algebra", "gl", "--m", "1", "--n", "1", "--out", "sub/hb.json"])
        .env("SUPERSPHERICAL_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("sub/hb.json")).unwrap()).unwrap();
    assert_eq!(v["result"]["hyperborels"].as_array().unwrap().len(), 2);
    assert_eq!(v["config"]["command"]["hyperborels"]["algebra"], "gl");
}

#[test]
fn iwasawa_verdicts() {
    let q = json(&["iwasawa", "--pair", "gl-q", "--n", "2", "--hyperborel"]);
    assert_eq!(q["result"]["iwasawa"]["status"], "HAS_IWASAWA");
    assert_eq!(q["result"]["hyperborel"]["b_plus_k_dim"], q["result"]["hyperborel"]["dim"]);
    let p = json(&["iwasawa", "--pair", "gl-p", "--n", "2", "--spherical"]);
    assert_eq!(p["result"]["iwasawa"]["status"], "NO_IWASAWA");
    assert_eq!(p["result"]["spherical"], "SPHERICAL");
    let d = json(&["iwasawa", "--pair", "diagonal", "--algebra", "q", "--n", "2"]);
    assert_eq!(d["result"]["iwasawa"]["status"], "NO_IWASAWA");
}

#[test]
fn gl11_emits_the_diagram() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("diagram.dot");
    let v = json(&["gl11", "--band", "2", "--emit-diagram", dot.to_str().unwrap()]);
    assert_eq!(v["result"]["ok"], true);
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.contains("digraph"));
    assert_eq!(text.matches(" -> ").count(), v["result"]["report"]["arrows"].as_array().unwrap().len());
}

#[test]
fn rep_shows_highest_weights() {
    let v = json(&["rep", "--algebra", "gl", "--m", "1", "--n", "1", "--show-hw"]);
    assert_eq!(v["result"]["sdim"], serde_json::json!([1, 1]));
    assert_eq!(v["result"]["highest_weight"].as_array().unwrap().len(), 2);
}

#[test]
fn disagreeing_expectations_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("expected.csv");
    // gl(1|1) on C^{1|1} is spherical; this file claims otherwise.
    std::fs::write(
        &path,
        "row,family,m,n,rep,scalars,size,dim_even,dim_odd,spherical\nGL,gl,1,1,standard,no,2,1,1,no\n",
    )
    .unwrap();
    let out = run(&["table", "spherical-reps", "--expected", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stdout).unwrap().contains("MISMATCH"));
    std::fs::write(&path, "not,a,table\n1,2,3\n").unwrap();
    assert_eq!(run(&["table", "spherical-reps", "--expected", path.to_str().unwrap()]).status.code(), Some(64));
}
