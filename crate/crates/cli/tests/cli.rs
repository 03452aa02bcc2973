use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const FULL_ADDER: &str = "\
.model fa
.inputs a b c
.outputs s co
.names a b c s
100 1
010 1
001 1
111 1
.names a b c co
11- 1
1-1 1
-11 1
.end
";

/// Full adder as an AIG: s = a ^ b ^ c, co = maj(a, b, c).
const FULL_ADDER_AAG: &str = "\
aag 10 3 0 2 7
2
4
6
18
21
8 2 4
10 3 5
12 9 11
14 12 6
16 13 7
18 15 17
20 9 15
c
full adder
";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_revsynth"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn file(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn synth_writes_three_outputs_and_verifies() {
    let d = tempfile::tempdir().unwrap();
    let input = file(d.path(), "fa.blif", FULL_ADDER);
    let stats = d.path().join("fa.json");
    let o = run(&["synth", s(&input), "--lut-size", "3", "--verify", "--deterministic", "--stats", s(&stats)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(d.path().join("fa.real").exists());
    assert!(d.path().join("fa.qasm").exists());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&stats).unwrap()).unwrap();
    assert_eq!(v["qubits"], 5);
    assert_eq!(v["verification"]["passed"], true);
    assert!(v.get("runtime_ms").is_none());
}

#[test]
fn deterministic_stats_are_identical_across_runs() {
    let d = tempfile::tempdir().unwrap();
    let input = file(d.path(), "fa.aag", FULL_ADDER_AAG);
    let go = |jobs: &str| {
        let o = run(&["synth", s(&input), "--lut-size", "4", "--deterministic", "--jobs", jobs, "-o", s(&d.path().join("out"))]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        o.stdout
    };
    assert_eq!(go("1"), go("3"));
}

#[test]
fn skeleton_reports_qubits_and_network() {
    let d = tempfile::tempdir().unwrap();
    let input = file(d.path(), "fa.aag", FULL_ADDER_AAG);
    let o = run(&["skeleton", s(&input), "--lut-size", "3"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["qubits"], 5);
    assert_eq!(v["network"]["lines"].as_array().unwrap().len(), 5);
    let o = run(&["skeleton", s(&input), "--lut-size", "3", "--trace", "-o", s(&d.path().join("sk.json"))]);
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "qubits: 5");
    assert!(String::from_utf8_lossy(&o.stderr).contains("compute"));
}

#[test]
fn map_emits_k_feasible_blif() {
    let d = tempfile::tempdir().unwrap();
    let input = file(d.path(), "fa.aag", FULL_ADDER_AAG);
    let out = d.path().join("fa.blif");
    let o = run(&["map", s(&input), "--lut-size", "3", "-o", s(&out)]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.matches(".names").count(), 2);
    let o = run(&["map", s(&input), "--format", "aiger", "--lut-size", "3"]);
    assert_eq!(String::from_utf8_lossy(&o.stdout), text);
}

#[test]
fn verify_prints_a_passing_report() {
    let d = tempfile::tempdir().unwrap();
    let input = file(d.path(), "fa.blif", FULL_ADDER);
    let o = run(&["verify", s(&input), "--mapping", "direct"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["equivalence"]["patterns_tested"], 8);
}

#[test]
fn exit_codes() {
    let d = tempfile::tempdir().unwrap();
    let input = file(d.path(), "fa.blif", FULL_ADDER);
    let bad = file(d.path(), "bad.blif", ".model m\n.inputs a\n.outputs y\n.names a q y\n11 1\n");
    assert_eq!(code(&run(&["synth", s(&input), "--satopt"])), 4);
    assert_eq!(code(&run(&["synth", s(&input), "--esop-extract", "bdd"])), 4);
    assert_eq!(code(&run(&["synth", s(&bad)])), 2);
    assert!(!d.path().join("bad.qasm").exists());
    assert_eq!(code(&run(&["synth", s(&input), "--lut-size", "40"])), 1);
    assert_eq!(code(&run(&["synth", s(&input), "--order", "sideways"])), 1);
    assert_eq!(code(&run(&["frobnicate"])), 1);
    assert_eq!(code(&run(&[])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
}

#[test]
fn class_database_round_trip() {
    let d = tempfile::tempdir().unwrap();
    let db = d.path().join("classes.db");
    let o = run(&["classify-db", "build", "--db", s(&db)]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("25 classes"));
    let o = run(&["classify-db", "show", "--db", s(&db), "--vars", "2"]);
    assert_eq!(String::from_utf8_lossy(&o.stdout).lines().count(), 2);
    let o = run(&["classify-db", "lookup", "8", "--vars", "2", "--db", s(&db)]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["representative"], "1");
    assert_eq!(v["t_count"], 7);
    // A Toffoli with a worse circuit is refused; so is a non-representative.
    let qasm = file(d.path(), "t.qasm", "OPENQASM 2.0;\nqreg q[3];\nh q[2];\nt q[2];\n");
    let o = run(&["classify-db", "import", "--db", s(&db), "--vars", "2", "--function", "8", "--qasm", s(&qasm)]);
    assert_eq!(code(&o), 1);
    let o = run(&["classify-db", "import", "--db", s(&db), "--vars", "2", "--function", "1", "--qasm", s(&qasm)]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("database"));
}
