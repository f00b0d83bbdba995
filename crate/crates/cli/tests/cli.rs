use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const DECODE_EXAMPLE: &str = "ab^3ab^2a^2ba^3bab^2a^2ba^3bab^2a^2ba^4b";
const DECODE_EXAMPLE_BITS: &str =
    r#"{"kind":"explicit","bits":[[2,2,1],[2,3,1],[3,2,0],[3,3,1],[4,2,1],[4,3,1]],"default":0}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adiclab")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn temp_file(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("adiclab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn block_worked_example() {
    let v = json(&["block", "--ordering", DECODE_EXAMPLE_BITS, "4", "3"]);
    assert_eq!(v["power"], DECODE_EXAMPLE);
    assert_eq!(v["ok"], true);
}

#[test]
fn block_smallest() {
    let v = json(&["block", "1", "1"]);
    assert_eq!(v["block"], "ab");
}

#[test]
fn block_census_matches_binomials() {
    for (x, y) in [(3u64, 5u64), (6, 2), (4, 4)] {
        let v = json(&["block", "--ordering", "seeded:11", &x.to_string(), &y.to_string()]);
        assert_eq!(v["census"]["a"].as_u64(), Some(binom(x + y - 1, x - 1)));
        assert_eq!(v["census"]["b"].as_u64(), Some(binom(x + y - 1, y - 1)));
        assert_eq!(v["census"]["vertex"]["x"].as_u64(), Some(x));
    }
}

#[test]
fn block_with_symbols() {
    let v = json(&["block", "2", "1", "--k", "2"]);
    assert_eq!(v["symbols"].as_array().unwrap().len(), 3);
}

#[test]
fn block_uses_cache_dir() {
    let dir = std::env::temp_dir().join(format!("adiclab-cache-{}", std::process::id()));
    let go = || {
        Command::new(env!("CARGO_BIN_EXE_adiclab"))
            .args(["block", "--ordering", "seeded:3", "5", "4"])
            .env("ADICLAB_CACHE_DIR", &dir)
            .output()
            .unwrap()
    };
    let first = go();
    assert_eq!(std::fs::read_dir(&dir).unwrap().count(), 1);
    assert_eq!(go().stdout, first.stdout);
}

#[test]
fn decode_worked_example() {
    let v = json(&["decode", DECODE_EXAMPLE]);
    assert_eq!(v["vertex"]["x"], 4);
    assert_eq!(v["vertex"]["y"], 3);
    let tokens: Vec<&str> = v["tokens"].as_array().unwrap().iter().map(|t| t.as_str().unwrap()).collect();
    assert_eq!(tokens.concat(), "D3D2C2C3D2C2C3D2C2C4");
    assert_eq!(v["bits"].as_array().unwrap().len(), 6);
}

#[test]
fn decode_smallest_and_roundtrip() {
    assert_eq!(json(&["decode", "ab"])["vertex"]["x"], 1);
    // decode of an encoded restricted block returns its bits
    let b = json(&["block", "--ordering", r#"{"kind":"explicit","bits":[[2,2,1],[3,2,1]],"default":0}"#, "3", "2"]);
    let d = json(&["decode", b["block"].as_str().unwrap()]);
    assert_eq!(d["bits"], serde_json::json!([[2, 2, 1], [3, 2, 1]]));
}

#[test]
fn complexity_table() {
    let v = json(&["complexity", "--n-max", "3", "--level", "10"]);
    let counts: Vec<u64> = v["rows"].as_array().unwrap().iter().map(|r| r["count"].as_u64().unwrap()).collect();
    assert_eq!(counts, vec![2, 4, 8]);
    let csv = run(&["complexity", "--n-max", "2", "--level", "8", "--format", "csv"]);
    assert_eq!(String::from_utf8(csv.stdout).unwrap(), "n,count,stabilized,stable_from\n1,2,true,3\n2,4,true,6\n");
}

#[test]
fn odometer_reports() {
    let swapped = temp_file(
        "swapped.json",
        r#"{"levels":[1,3,3,2],"coding":[[[0],[0],[0]],[[0,1],[1,2],[1,2]],[[0,1],[0,2]]]}"#,
    );
    let v = json(&["odometer", "--diagram", swapped.to_str().unwrap(), "--depth", "2"]);
    assert_eq!(v["status"], "CERTIFICATE");
    assert_eq!(v["uniform_levels"], serde_json::json!([1]));
    assert_eq!(v["certificate"]["uniform"][0]["base"], serde_json::json!([0, 1, 1, 2]));

    let tm = temp_file(
        "tm.json",
        r#"{"levels":[1,3,3,3,3],"coding":[[[0],[0],[0]],[[0,1],[2,0],[2,0]],[[0,1],[2,0],[2,0]],[[0,1],[2,0],[2,0]]]}"#,
    );
    let out = run(&["odometer", "--diagram", tm.to_str().unwrap(), "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("NO-CERTIFICATE-FOUND"));
}

#[test]
fn odometer_rejects_bad_diagram() {
    let bad = temp_file("bad.json", r#"{"levels":[1,2],"coding":[[[0],[]]]}"#);
    assert_eq!(run(&["odometer", "--diagram", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn montecarlo_matches_exact() {
    let shapes = temp_file(
        "shapes.json",
        r#"[{"sources":2,"targets":2,"multiplicity":[[1,1],[1,1]]},
            {"sources":2,"targets":3,"multiplicity":[[1,1,1],[1,1,1]]}]"#,
    );
    let v = json(&["montecarlo", "--shapes", shapes.to_str().unwrap(), "--trials", "20000", "--seed", "5"]);
    assert_eq!(v["levels"][0]["exact"], "1/2");
    assert_eq!(v["levels"][1]["exact"], "1/4");
    assert_eq!(v["within_3sigma"], serde_json::json!([true, true]));
    assert_eq!(v["borel_cantelli"][1].as_f64(), Some(0.75));
}

#[test]
fn montecarlo_shape_mismatch() {
    let shapes = temp_file(
        "mismatch.json",
        r#"[{"sources":2,"targets":3,"multiplicity":[[1,1,1],[1,1,1]]},
            {"sources":2,"targets":2,"multiplicity":[[1,1],[1,1]]}]"#,
    );
    let out = run(&["montecarlo", "--shapes", shapes.to_str().unwrap(), "--trials", "10", "--seed", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn kink_summary() {
    let v = json(&["kink", "--trials", "64", "--seed", "2", "--level", "9"]);
    assert_eq!(v["agreed"], 64);
    assert_eq!(v["cases"].as_object().unwrap().len(), 8);
    let csv = run(&["kink", "--trials", "16", "--seed", "2", "--level", "8", "--format", "csv"]);
    assert_eq!(String::from_utf8(csv.stdout).unwrap().lines().count(), 9);
}

#[test]
fn alternation_verdict() {
    let v = json(&["alternation", "--level", "9", "--j", "9"]);
    assert_eq!(v["verdict"], "EXCLUDED");
    assert_eq!(v["exact"]["verdict"], "EXCLUDED");
}

#[test]
fn smallshift_probe() {
    let v = json(&["smallshift", "--n", "60", "--level", "20"]);
    assert!(v["unexpected"].as_array().unwrap().is_empty());
    // short windows shared by both languages need not extend to shared points
    let out = run(&["smallshift", "--n", "10", "--level", "12"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["common"].as_array().unwrap().iter().any(|w| w == "a^10"));
    assert!(v["unexpected"].as_array().unwrap().iter().any(|w| w == "a^4ba^4b"));
}

#[test]
fn deterministic_output() {
    for args in [
        &["kink", "--trials", "24", "--seed", "9", "--level", "8"][..],
        &["smallshift", "--n", "8", "--level", "10"][..],
        &["block", "--ordering", "seeded:4", "6", "5", "--format", "text"][..],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["block"]).status.code(), Some(2));
    assert_eq!(run(&["kink", "--trials", "3"]).status.code(), Some(2));
    assert_eq!(run(&["decode", "baab"]).status.code(), Some(2));
    assert_eq!(run(&["decode", "1", "--format", "csv"]).status.code(), Some(2));
    assert_eq!(run(&["block", "1", "1", "--format", "csv"]).status.code(), Some(2));
    assert_eq!(run(&["block", "20", "20", "--max-mem", "1"]).status.code(), Some(3));
    assert_eq!(run(&["block", "--ordering", "seeded:1", "3", "3", "--threads", "2"]).status.code(), Some(0));
}
