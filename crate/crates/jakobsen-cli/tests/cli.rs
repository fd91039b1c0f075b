use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jakobsen"))
        .args(args)
        .env_remove("JAKOBSEN_LOG")
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

#[test]
fn classify_su58() {
    let v = json(&["classify", "--family", "su", "--p", "5", "--q", "8", "--labels", "mu5=1,mu8=1"]);
    assert_eq!(v["schema_version"], 1);
    let r = &v["result"];
    assert_eq!(r["lambda0"], "-6");
    assert_eq!(r["reduction_level"], 3);
    let places: Vec<&str> = r["missing"].as_array().unwrap().iter().map(|m| m["lambda_q"].as_str().unwrap()).collect();
    assert_eq!(places, ["-6", "-7", "-8"]);
    assert!(r["missing"].as_array().unwrap().iter().all(|m| !m["certificate"].is_null()));
}

#[test]
fn classify_e7_and_su11() {
    let v = json(&["classify", "--family", "e7", "--labels", "mu6=1"]);
    assert_eq!(v["result"]["lambda0"], "-8");
    assert_eq!(v["result"]["missing"][1]["lambda_q"], "-12");
    let v = json(&["classify", "--family", "su", "--p", "1", "--q", "1"]);
    assert_eq!(v["result"]["lambda0"], "0");
    assert_eq!(v["result"]["reduction_level"], 1);
}

#[test]
fn classify_verdict_table() {
    let tsv = stdout(&[
        "classify", "--family", "su", "--p", "5", "--q", "8", "--labels", "mu5=1,mu8=1", "--format", "tsv",
        "--lambdas", "-6,-6.5,-9",
    ]);
    assert!(tsv.contains("-6\tunitary-point-1"));
    assert!(tsv.contains("-13/2\tnonunitary"));
    assert!(tsv.contains("-9\tunitary"));
    // rationals are printed exactly, never as floats
    assert!(!tsv.contains("-6.5"));
}

#[test]
fn diagrams() {
    let ascii = stdout(&["diagram", "--family", "sp", "--n", "10", "--format", "ascii"]);
    assert!(ascii.starts_with("sp(10,R) noncompact positive roots: 55\n"));
    let nodes: usize = ascii.lines().filter(|l| l.starts_with("h=")).map(|l| l.matches("α_").count()).sum();
    assert_eq!(nodes, 55);
    let dot = stdout(&["diagram", "--family", "su", "--p", "2", "--q", "2", "--format", "dot"]);
    assert_eq!(dot.lines().filter(|l| l.contains("[label=\"α_")).count(), 4);
    let e6 = stdout(&["diagram", "--family", "e6", "--split-rank"]);
    assert!(e6.contains("split rank: 2"));
}

#[test]
fn verify_commands() {
    let v = json(&["verify", "--catalog"]);
    assert_eq!(v["passed"], v["total"]);
    let v = json(&["verify", "--oracle", "su22", "--lambdas", "-0.5,-1,-1.5"]);
    let psd: Vec<bool> = v["scans"].as_array().unwrap().iter().map(|s| s["psd"].as_bool().unwrap()).collect();
    assert_eq!(psd, [false, true, true]);
    assert_eq!(v["ok"], true);
    let v = json(&["verify", "--oracle", "su11"]);
    assert_eq!(v["closed_form_ok"], true);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code();
    assert_eq!(code(&["--version"]), Some(0));
    assert_eq!(code(&["bogus"]), Some(1));
    assert_eq!(code(&["classify", "--family", "su", "--p", "5", "--q", "8", "--labels", "mu12=1"]), Some(1));
    assert_eq!(code(&["classify", "--family", "su", "--p", "5"]), Some(1));
    assert_eq!(code(&["classify", "--family", "soodd", "--n", "3"]), Some(1));
    assert_eq!(code(&["diagram", "--family", "e6", "--format", "svg"]), Some(1));
    assert_eq!(code(&["verify", "--oracle", "su33"]), Some(1));
    assert_eq!(code(&["verify", "--oracle", "su11", "--degree", "0"]), Some(1));
}

#[test]
fn output_is_deterministic() {
    let args = ["classify", "--family", "sostar", "--n", "8", "--labels", "mu6=2,mu7=1"];
    assert_eq!(stdout(&args), stdout(&args));
}
