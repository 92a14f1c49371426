use std::path::PathBuf;
use std::process::{Command, Output};

fn forrel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_forrel"))
        .args(args)
        .env_remove("FORREL_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("forrel-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn analyze_reports() {
    let constant = temp_file("const.txt", "# constant\nn=2\n0000\n");
    let v = json(&forrel(&["analyze", constant.to_str().unwrap()]));
    assert_eq!(v["resiliency_order"], -1);
    assert_eq!(v["bent"], false);
    assert_eq!(v["walsh"]["values"], serde_json::json!([4, 0, 0, 0]));
    assert_eq!(v["walsh"]["kind"], "walsh");
    assert_eq!(v["parseval"]["holds"], true);

    let and = temp_file("and.txt", "n=2\n0001\n");
    let v = json(&forrel(&["analyze", and.to_str().unwrap()]));
    assert_eq!(v["bent"], true);
    assert_eq!(v["dual"], "0001");

    let bad = temp_file("bad.txt", "n=2\n000\n");
    let out = forrel(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("length mismatch"));
}

#[test]
fn forrelation_values() {
    let v = json(&forrel(&["forrelation", "--fns", "0001,0001"]));
    assert_eq!(v["value"], 1.0);
    let v = json(&forrel(&["forrelation", "--fns", "0000,0000"]));
    assert_eq!(v["value"], 0.5);
    let wide = "0".repeat(128);
    let arg = [wide.as_str(); 4].join(",");
    let out = forrel(&["forrelation", "--fns", &arg]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("too large"));
}

#[test]
fn simulate_circuits() {
    let v = json(&forrel(&["simulate", "--circuit", "dj", "--fns", "0000", "--exact"]));
    assert_eq!(v, serde_json::json!({"00": 1.0}));

    // f1 = f3 = x1 x2 (self-dual), f2 = -1: Φ = -1.
    let v = json(&forrel(&["simulate", "--circuit", "a32", "--fns", "0001,1111,0001"]));
    assert_eq!(v, serde_json::json!({"1": 1.0}));

    let v = json(&forrel(&[
        "simulate",
        "--circuit",
        "alg1",
        "--fns",
        "0000,0000",
        "--variant",
        "uniform",
    ]));
    assert_eq!(
        v,
        serde_json::json!({"0000": 0.25, "0100": 0.25, "1000": 0.25, "1100": 0.25})
    );

    let v = json(&forrel(&[
        "simulate",
        "--circuit",
        "alg1",
        "--fns",
        "0001,0001",
        "--variant",
        "point:00",
    ]));
    assert_eq!(v["0000"], 1.0);

    let v = json(&forrel(&[
        "simulate",
        "--circuit",
        "a33",
        "--fns",
        "0010,1110,0010",
        "--exact",
    ]));
    let total: f64 = v.as_object().unwrap().values().map(|p| p.as_f64().unwrap()).sum();
    assert!((total - 1.0).abs() < 1e-10);

    let v = json(&forrel(&[
        "simulate",
        "--circuit",
        "forr2",
        "--fns",
        "0001,0001",
        "--shots",
        "500",
        "--seed",
        "3",
    ]));
    assert_eq!(v, serde_json::json!({"00": 500}));

    let v = json(&forrel(&["simulate", "--circuit", "dj", "--fns", "0110", "--dump"]));
    assert_eq!(v["name"], "dj");
    assert!(v["circuit"]["gates"].as_array().unwrap().len() > 4);
    assert_eq!(v["circuit"]["roles"]["kickback"], serde_json::json!([2]));

    let out = forrel(&["simulate", "--circuit", "a33", "--fns", "0001"]);
    assert_eq!(out.status.code(), Some(2));
    let out = forrel(&[
        "simulate",
        "--circuit",
        "dj",
        "--fns",
        "0001",
        "--exact",
        "--shots",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_verdicts() {
    let v = json(&forrel(&["check", "--fn", "0110", "--resilient", "1"]));
    assert_eq!(v["verdict"], "NOT_REFUTED");
    assert_eq!(v["witness"], serde_json::Value::Null);

    let out = forrel(&["check", "--fn", "0000", "--resilient", "0", "--fail-on-refute"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "REFUTED");
    assert_eq!(v["witness"], "00");

    let v = json(&forrel(&["check", "--fn", "0000", "--resilient", "0"]));
    assert_eq!(v["verdict"], "REFUTED");

    for method in ["flat", "dicke"] {
        let v = json(&forrel(&[
            "check",
            "--fn",
            "0101",
            "--fn2",
            "0011",
            "--uncorrelated",
            "1",
            "--method",
            method,
        ]));
        assert_eq!(v["verdict"], "NOT_REFUTED");
        assert_eq!(v["good_mass"], 0.0);
    }

    let v = json(&forrel(&[
        "check",
        "--fn",
        "0001",
        "--uncorrelated",
        "0",
        "--method",
        "dicke",
        "--exact",
    ]));
    assert_eq!(v["verdict"], "REFUTED");
    assert_eq!(v["oracle_calls"], 0);
    assert_eq!(v["per_weight"][0]["good_mass"], 1.0);

    let out = forrel(&["check", "--fn", "0001"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn curves_csv() {
    let out = forrel(&["curves", "--pgrid", "0:1:0.01"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("p,dj_once,dj_twice,dj_aa1,a33,source"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 101);
    assert_eq!(rows[0], "0.0,0.0,0.0,0.0,0.0,closed");
    assert_eq!(rows[25], "0.25,0.25,0.4375,1.0,0.75,closed");
    assert!(rows[75].starts_with("0.75,0.75,"));
    assert!(rows[75].ends_with(",0.75,closed"));

    let out = forrel(&["curves", "--fn", "0010", "--set", "00", "--pgrid", "0:1:0.5"]);
    let text = stdout(&out);
    assert_eq!(text.lines().last(), Some("0.25,0.25,0.4375,1.0,0.75,simulated"));
}

#[test]
fn estimate_and_correlate() {
    let v = json(&forrel(&[
        "estimate",
        "--fns",
        "0001",
        "--y",
        "00",
        "--epsilon",
        "0.1",
        "--seed",
        "5",
    ]));
    assert!((v["alpha"].as_f64().unwrap() - 1.0).abs() <= 0.1);
    let v = json(&forrel(&[
        "estimate",
        "--fns",
        "0001",
        "--y",
        "11",
        "--epsilon",
        "0.1",
        "--seed",
        "5",
    ]));
    assert!(v["alpha"].as_f64().unwrap().abs() <= 0.1);

    let v = json(&forrel(&[
        "correlate",
        "--fns",
        "0001,0001",
        "--shots",
        "200",
        "--seed",
        "1",
    ]));
    let tags = v["zero_query"].as_array().unwrap();
    assert_eq!(tags.len(), 4);
    assert_eq!(tags[0]["outcome"], "0000");
    assert_eq!(tags[0]["probability"], 0.25);
    assert_eq!(tags[0]["correlation"], 4);
}

#[test]
fn same_seed_same_bytes() {
    let runs = [
        vec![
            "simulate",
            "--circuit",
            "alg1",
            "--fns",
            "0110,0011",
            "--shots",
            "2000",
            "--seed",
            "9",
        ],
        vec!["check", "--fn", "01101001", "--resilient", "2", "--seed", "4"],
        vec![
            "check",
            "--fn",
            "0110",
            "--fn2",
            "0011",
            "--uncorrelated",
            "1",
            "--method",
            "dicke",
            "--seed",
            "4",
        ],
        vec!["estimate", "--fns", "0110,0011", "--y", "01", "--seed", "2"],
    ];
    for args in &runs {
        let a = forrel(args);
        let b = forrel(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn seed_from_environment() {
    let args = ["simulate", "--circuit", "alg1", "--fns", "0110,0011", "--shots", "300"];
    let with_env = Command::new(env!("CARGO_BIN_EXE_forrel"))
        .args(args)
        .env("FORREL_SEED", "17")
        .output()
        .unwrap();
    let with_flag = forrel(&[&args[..], &["--seed", "17"]].concat());
    assert_eq!(with_env.stdout, with_flag.stdout);
}
