use std::process::Command;

use homcon::cli::{run, Outcome, EXIT_LIMIT, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn homcon(args: &[&str]) -> Outcome {
    run(std::iter::once("homcon").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = homcon(&all);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["schema"], "homcon/1");
    v
}

fn usizes(v: &Value) -> Vec<usize> {
    v.as_array().unwrap().iter().map(|x| x.as_u64().unwrap() as usize).collect()
}

fn strings(v: &Value) -> Vec<String> {
    let mut s: Vec<String> = v.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect();
    s.sort();
    s
}

#[test]
fn orbits_examples() {
    let v = json(&["orbits", "--group", "cyclic:4"]);
    assert_eq!(v["command"], "orbits");
    assert_eq!(usizes(&v["coefficients"]), [1, 1, 2, 1, 1]);
    assert_eq!(v["orbit_polynomial"], "1 + q + 2q^2 + q^3 + q^4");
    assert_eq!(v["x_at_minus_one"], 2);

    let v = json(&["orbits", "--group", "symmetric:3"]);
    assert_eq!(usizes(&v["coefficients"]), [1, 1, 1, 1]);
    assert_eq!(v["x_at_minus_one"], 0);

    let v = json(&["orbits", "--group", "wreath:2,2", "--check"]);
    let qb = homcon_core::qpoly::q_binomial(2, 2).to_u64s().unwrap();
    let got: Vec<u64> = usizes(&v["coefficients"]).into_iter().map(|x| x as u64).collect();
    assert_eq!(got, qb);
}

#[test]
fn homology_examples() {
    let v = json(&["homology", "--group", "cyclic:12"]);
    assert_eq!(usizes(&v["homology"]), [1, 0, 1, 0, 2, 0, 2, 0, 1, 0, 1, 0, 0]);
    let v = json(&["homology", "--group", "cyclic:5", "--check"]);
    assert!(usizes(&v["homology"]).iter().all(|&h| h == 0));
    assert_eq!(v["all_kinds"].as_array().unwrap().len(), 4);

    let isbell = json(&["isbell", "--b", "3"]);
    let spec = isbell["group"].as_str().unwrap().to_string();
    let v = json(&["homology", "--group", &spec]);
    let h = usizes(&v["homology"]);
    assert!(h.iter().skip(1).step_by(2).any(|&x| x != 0), "{h:?}");
}

#[test]
fn rect_example() {
    let v = json(&["rect", "--k", "2", "--l", "2", "--check"]);
    assert_eq!(strings(&v["critical"]), ["(0,0)", "(1,1)"]);
    let images: Vec<Value> = v["phi"].as_array().unwrap().iter().map(|p| p["image"].clone()).collect();
    assert_eq!(strings(&Value::Array(images)), ["(1,1)", "(2,0)"]);
}

#[test]
fn box_example() {
    let v = json(&["box", "--r", "2", "--c", "2", "--t", "2", "--check"]);
    assert_eq!(
        strings(&v["critical"]),
        ["[[0,0],[1,1]]", "[[0,2],[1,3]]", "[[1,1],[3,3]]", "[[2,2],[3,3]]"]
    );
    assert_eq!(v["pairs"].as_array().unwrap().len(), 8);
    assert_eq!(v["intervals"].as_array().unwrap().len(), 5);
}

#[test]
fn necklace_with_conjecture() {
    let v = json(&["necklace", "--n", "18", "--check-conjecture"]);
    let row = &v["rows"][0];
    assert_eq!(usizes(&row["homology"]), [1, 0, 0, 0, 4, 0, 6, 0, 8, 0, 6, 0, 4, 0, 0, 0, 1, 0, 0]);
    assert_eq!(row["conjecture_holds"], true);

    let v = json(&["necklace", "--n", "8", "--all-even"]);
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
}

#[test]
fn isbell_report() {
    for (b, d, order) in [(3, 2, 12), (5, 4, 80), (7, 3, 56)] {
        let v = json(&["isbell", "--b", &b.to_string()]);
        assert_eq!(v["d"], d);
        assert_eq!(v["order"], order);
        assert_eq!(v["transitive"], true);
        assert_eq!(v["two_power_derangement"], false);
    }
    assert_eq!(homcon(&["isbell", "--b", "4"]).code, EXIT_USAGE);
}

#[test]
fn output_is_deterministic() {
    let a = homcon(&["box", "--r", "2", "--c", "3", "--t", "2", "--format", "json", "--threads", "1"]);
    let b = homcon(&["box", "--r", "2", "--c", "3", "--t", "2", "--format", "json", "--threads", "3"]);
    assert_eq!(a, b);
    let a = homcon(&["necklace", "--n", "12", "--all-even", "--threads", "1"]);
    let b = homcon(&["necklace", "--n", "12", "--all-even", "--threads", "4"]);
    assert_eq!(a, b);
}

#[test]
fn csv_output() {
    let out = homcon(&["homology", "--group", "cyclic:4", "--format", "csv"]);
    let mut r = csv::Reader::from_reader(out.stdout.as_bytes());
    assert_eq!(r.headers().unwrap(), vec!["rank", "dim", "homology"]);
    let h: Vec<String> = r.records().map(|x| x.unwrap()[2].to_string()).collect();
    assert_eq!(h, ["1", "0", "1", "0", "0"]);
}

#[test]
fn text_output() {
    let out = homcon(&["necklace", "--n", "4"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("{1, 0, 1, 0, 0}"), "{}", out.stdout);
}

#[test]
fn error_exit_codes() {
    let out = homcon(&["orbits", "--group", "gens:4:(1 5)"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("position 10"), "{}", out.stderr);
    assert_eq!(homcon(&["homology", "--group", "cyclic:4", "--kind", "inv"]).code, EXIT_USAGE);
    assert_eq!(homcon(&["orbits"]).code, EXIT_USAGE);
    assert_eq!(homcon(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(homcon(&["orbits", "--group", "cyclic:4", "--threads", "0"]).code, EXIT_USAGE);
    assert_eq!(homcon(&["--help"]).code, EXIT_OK);

    let out = homcon(&["homology", "--group", "cyclic:30"]);
    assert_eq!(out.code, EXIT_LIMIT);
    assert!(out.stderr.contains("--limit"));
    assert_eq!(homcon(&["box", "--r", "3", "--c", "3", "--t", "3", "--cell-limit", "10"]).code, EXIT_LIMIT);
    assert_eq!(homcon(&["orbits", "--group", "symmetric:8", "--check", "--order-limit", "100"]).code, EXIT_LIMIT);
}

#[test]
fn binary_honours_env_limit() {
    let bin = env!("CARGO_BIN_EXE_homcon");
    let out = Command::new(bin)
        .args(["orbits", "--group", "cyclic:6"])
        .env("HOMCON_LIMIT", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_LIMIT));
    let out = Command::new(bin)
        .args(["orbits", "--group", "cyclic:6", "--limit", "6"])
        .env("HOMCON_LIMIT", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&out.stdout).contains("X(G,-1) = 2"));
}
