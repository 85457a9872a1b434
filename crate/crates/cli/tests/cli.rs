use std::io::Write;
use std::process::{Command, Output};

fn qed(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qed")).args(args).output().expect("runs")
}

fn qed_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qed"))
        .args(args)
        .env(key, value)
        .output()
        .expect("runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn temp_code(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn enum_c422() {
    let o = qed(&["enum", "c422"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("B=1,0,0,0,3\n"), "{out}");
    assert!(out.contains("Bperp=1,0,18,24,21\n"));
    assert!(out.contains("d=2\n"));
}

#[test]
fn enum_five13_json() {
    let o = qed(&["enum", "five13", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["d"], 3);
    assert_eq!(v["n"], 5);
    assert_eq!(v["K"], "2");
    assert_eq!(v["B"], serde_json::json!(["1", "0", "0", "0", "15", "0"]));
    assert_eq!(v["Bperp"], serde_json::json!(["1", "0", "0", "30", "15", "18"]));
}

#[test]
fn enum_input_errors() {
    assert_eq!(code(&qed(&["enum", "/nonexistent/code.txt"])), 2);
    let bad = temp_code("XQ\n");
    assert_eq!(code(&qed(&["enum", bad.path().to_str().unwrap()])), 2);
    let signed = temp_code("-XX\nZZ\n");
    assert_eq!(code(&qed(&["enum", signed.path().to_str().unwrap()])), 2);
    let ragged = temp_code("XX\nZZZ\n");
    assert_eq!(code(&qed(&["enum", ragged.path().to_str().unwrap()])), 2);
    assert_eq!(code(&qed(&["enum"])), 2);
}

#[test]
fn enum_from_file() {
    let f = temp_code("# two qubits\nn=2 k=0\n11\nww\n");
    let o = qed(&["enum", f.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("B=1,0,3\n"));
}

#[test]
fn enum_rejects_non_stabilizer() {
    let f = temp_code("XI\nZI\n");
    assert_eq!(code(&qed(&["enum", f.path().to_str().unwrap()])), 1);
}

#[test]
fn pue_trivial_identity() {
    let o = qed(&["pue", "trivial-n1", "--p", "0.1", "--mode", "s"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "0.1\n");
}

#[test]
fn pue_sweep_csv() {
    let o = qed(&["pue", "c422", "--sweep", "0:0.75:0.25", "--mode", "c", "--csv"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "p,mode,pue");
    assert_eq!(lines.len(), 5);
    assert!(lines[1..].iter().all(|l| l.split(',').nth(1) == Some("composite")));
    assert_eq!(lines[1], "0,composite,0");
}

#[test]
fn pue_nonstabilizer_ratio() {
    let s: f64 = stdout(&qed(&["pue", "c422", "--p", "0.2", "--mode", "s"])).trim().parse().unwrap();
    let n: f64 = stdout(&qed(&["pue", "c422", "--p", "0.2", "--mode", "n"])).trim().parse().unwrap();
    assert!((n / s - 0.8).abs() < 1e-15);
}

#[test]
fn pue_out_of_range() {
    assert_eq!(code(&qed(&["pue", "c422", "--p", "0.9"])), 1);
    assert_eq!(code(&qed(&["pue", "c422", "--p", "0.1", "--mode", "x"])), 2);
    assert_eq!(code(&qed(&["pue", "c422"])), 2);
}

#[test]
fn verify_c422() {
    let o = qed(&["verify", "c422"]);
    let out = stdout(&o);
    assert_eq!(code(&o), 0, "{out}");
    assert!(out.lines().all(|l| l.starts_with("PASS") || l.starts_with("SKIP")));
    assert!(out.contains("PASS oracle enumerators"));
}

#[test]
fn verify_five13_lemmas() {
    let o = qed(&["verify", "five13", "--samples", "100000", "--seed", "7"]);
    let out = stdout(&o);
    assert_eq!(code(&o), 0, "{out}");
    assert!(out.contains("PASS lemma second moment"));
    assert!(out.contains("PASS lemma fourth moment"));
}

#[test]
fn verify_oracle_cap() {
    let o = qed(&["verify", "steane713"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("oracle cap"));
    let o = qed(&["verify", "c422", "--max-n", "3"]);
    assert_eq!(code(&o), 1);
    let o = qed_env(&["verify", "five13"], "QED_ORACLE_CAP", "4");
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("oracle cap of 4"));
}

#[test]
fn simulate_is_reproducible() {
    let args = ["simulate", "c422", "--p", "0.1", "--trials", "5000", "--seed", "42"];
    let a = qed(&args);
    let b = qed(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["trials"], 5000);
    assert_eq!(v["seed"], 42);
    assert_eq!(v["protocol"], "stabilizer");
    let c = &v["counts"];
    let total = c["undetected"].as_u64().unwrap() + c["detected"].as_u64().unwrap() + c["trivial"].as_u64().unwrap();
    assert_eq!(total, 5000);
    let err = String::from_utf8(a.stderr).unwrap();
    assert!(err.contains("sigma_distance="), "{err}");
}

#[test]
fn simulate_rejects_bad_input() {
    assert_eq!(code(&qed(&["simulate", "c422", "--p", "0.1", "--trials", "0"])), 1);
    assert_eq!(code(&qed(&["simulate", "c422", "--p", "0.8"])), 1);
    assert_eq!(code(&qed(&["simulate", "c422", "--p", "0.1", "--protocol", "z"])), 2);
}
