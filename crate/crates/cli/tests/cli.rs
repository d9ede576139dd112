use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn problem(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../problems").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toricsg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

fn ints(v: &Value) -> Vec<Vec<i64>> {
    // polygon of [[n,d],[n,d]] points, integral only
    v.as_array()
        .unwrap()
        .iter()
        .map(|p| {
            p.as_array()
                .unwrap()
                .iter()
                .map(|c| {
                    assert_eq!(c[1], 1);
                    c[0].as_i64().unwrap()
                })
                .collect()
        })
        .collect()
}

fn sorted(mut v: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    v.sort();
    v
}

#[test]
fn analyze_running_example() {
    let input = problem("running.json");
    let d = json(&["analyze", "--input", input.to_str().unwrap()]);
    assert_eq!(
        sorted(ints(&d["nabla_prime"])),
        vec![vec![-7, 0], vec![-3, -2], vec![0, -2], vec![0, 0]]
    );
    assert_eq!(d["verdict"]["finitely_generated"], false);
    assert_eq!(d["verdict"]["source"], "criterion");
    assert_eq!(d["pairs"][0]["e_bar"], 2);
    assert_eq!(d["pairs"][1]["e_bar"], 30);
    assert_eq!(d["pairs"][1]["d"], serde_json::json!([35, 1]));
    // the toric vertex (0, 25) of the body never lifts
    let rows = d["lifting"].as_array().unwrap();
    assert!(rows.iter().any(|r| r["q"][0] == 0 && r["t"] == serde_json::json!([25, 1]) && r["lifts"] == false));
}

#[test]
fn seven_gon_is_finitely_generated() {
    let input = problem("seven_gon.json");
    let d = json(&["fg", "--input", input.to_str().unwrap()]);
    assert_eq!(d["finitely_generated"], true);
    let d = json(&["analyze", "--input", input.to_str().unwrap()]);
    assert_eq!(d["smooth"], false);
}

#[test]
fn semigroup_rows() {
    let input = problem("running.json");
    let csv = stdout(&["semigroup", "--input", input.to_str().unwrap(), "--lmax", "3"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert!(lines[0].starts_with("# S = "));
    assert_eq!(lines[1], "l,k,e_bar");
    assert!(lines.contains(&"1,1,2") && lines.contains(&"3,2,30"));

    let expanded = stdout(&["semigroup", "--input", input.to_str().unwrap(), "--lmax", "1", "--expand"]);
    let triples: Vec<&str> = expanded.lines().skip(2).collect();
    let total: i64 = lines
        .iter()
        .skip(2)
        .filter(|l| l.starts_with("1,"))
        .map(|l| l.rsplit(',').next().unwrap().parse::<i64>().unwrap())
        .sum();
    assert_eq!(triples.len() as i64, total);
    assert!(triples.contains(&"1,1,0") && triples.contains(&"1,1,1"));
    assert!(!triples.contains(&"1,1,2"));
}

#[test]
fn plots_are_exact_and_deterministic() {
    let input = problem("running.json");
    let args = ["plot", "nobody", "--input", input.to_str().unwrap()];
    let svg = stdout(&args);
    for label in ["(0,0)", "(0,25)", "(2/3,35/3)", "(8/7,0)"] {
        assert!(svg.contains(label), "missing {label}");
    }
    assert_eq!(svg, stdout(&args));

    let theta = stdout(&["plot", "theta", "--l", "3", "--k", "2", "--input", input.to_str().unwrap()]);
    for label in ["(0,0)", "(-10,0)", "(0,-5)"] {
        assert!(theta.contains(&format!(">{label}<")), "missing {label}");
    }
    assert_eq!(theta.matches("r=\"3\"").count(), 3);

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fan.svg");
    stdout(&["plot", "fan", "--input", input.to_str().unwrap(), "--output", out.to_str().unwrap()]);
    let fan = std::fs::read_to_string(&out).unwrap();
    assert!(fan.contains("(1,2)") && fan.contains("marker-end"));
}

#[test]
fn direction_flag_overrides_file() {
    let input = problem("running.json");
    let d = json(&["nobody", "--input", input.to_str().unwrap(), "--direction", "0,1"]);
    let d2 = json(&["nobody", "--input", input.to_str().unwrap()]);
    assert_ne!(d["vertices"], d2["vertices"]);
    // both bodies have the area of the polytope
    assert_eq!(d["area"], d2["area"]);
}

#[test]
fn fg_all_and_construct_bad() {
    let input = problem("running.json");
    let d = json(&["fg-all", "--input", input.to_str().unwrap()]);
    assert_eq!(d["fg_for_all_divisors"], false);
    assert_eq!(d["failing"]["cone"]["kind"], "pointed");

    let d = json(&["construct-bad", "--input", input.to_str().unwrap()]);
    assert_eq!(d["verdict"]["finitely_generated"], false);
    assert_eq!(d["direction"], serde_json::json!([-2, 3]));

    // every divisor on P2 is fg for a coordinate direction
    let dir = tempfile::tempdir().unwrap();
    let p2 = dir.path().join("p2.json");
    std::fs::write(&p2, r#"{"fan": [[1,0],[0,1],[-1,-1]], "divisor": [0,0,1], "direction": [1,0]}"#).unwrap();
    let d = json(&["fg-all", "--input", p2.to_str().unwrap()]);
    assert_eq!(d["fg_for_all_divisors"], true);
    let out = run(&["construct-bad", "--input", p2.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scan_modes_agree() {
    let input = problem("seven_gon.json");
    let par = json(&["scan", "--input", input.to_str().unwrap(), "--bound", "3"]);
    let seq = json(&["scan", "--input", input.to_str().unwrap(), "--bound", "3", "--sequential"]);
    assert_eq!(par, seq);
    let dirs = par["directions"].as_array().unwrap();
    assert!(dirs.iter().any(|r| r["direction"] == serde_json::json!([0, 1]) && r["finitely_generated"] == true));
}

fn error_of(args: &[&str]) -> (Option<i32>, Value) {
    let out = run(args);
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    (out.status.code(), err)
}

#[test]
fn errors_are_structured() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    };
    let bad = write("bad.json", r#"{"fan": [[1,0],[0,1],[-1,-2]], "divisor": [0,0,1], "direction": [1,0]}"#);
    let (code, err) = error_of(&["fg", "--input", bad.to_str().unwrap()]);
    assert_eq!(code, Some(2));
    assert_eq!(err["error"], "fan_not_smooth");
    assert_eq!(err["reason"], "fan not smooth");

    let input = problem("running.json");
    let (code, err) = error_of(&["fg", "--input", input.to_str().unwrap(), "--direction", "2,4"]);
    assert_eq!(code, Some(2));
    assert_eq!(err["error"], "non_primitive_direction");

    let (code, err) = error_of(&["fg", "--input", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(code, Some(1));
    assert_eq!(err["error"], "io");

    let extra = write("extra.json", r#"{"polytope": [[0,0],[1,0],[0,1]], "colour": 1}"#);
    let (code, err) = error_of(&["nobody", "--input", extra.to_str().unwrap(), "--direction", "1,0"]);
    assert_eq!(code, Some(2));
    assert_eq!(err["error"], "invalid_input");

    let (_, err) = error_of(&["semigroup", "--input", input.to_str().unwrap(), "--lmax", "0"]);
    assert_eq!(err["error"], "out_of_range");
}
