use std::io::Write;
use std::process::{Command, Output, Stdio};
use std::sync::OnceLock;

use jsonschema::JSONSchema;
use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_thresholdlab"));
    c.env_remove("THRESHOLDLAB_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn ok(out: &Output) -> String {
    assert!(
        out.status.success(),
        "status {:?}, stderr: {}",
        out.status,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn schema() -> &'static JSONSchema {
    static S: OnceLock<JSONSchema> = OnceLock::new();
    S.get_or_init(|| {
        let text = include_str!("../schema/output.schema.json");
        let v: Value = serde_json::from_str(text).unwrap();
        JSONSchema::compile(&v).expect("schema compiles")
    })
}

fn valid_json(text: &str) -> Value {
    let v: Value = serde_json::from_str(text).unwrap_or_else(|e| panic!("{e}: {text}"));
    if let Err(errs) = schema().validate(&v) {
        let msgs: Vec<String> = errs.map(|e| e.to_string()).collect();
        panic!("schema violations for {text}: {msgs:?}");
    }
    v
}

#[test]
fn counts() {
    assert_eq!(ok(&run(&["count", "--t-labeled", "10"])), "62749906\n");
    assert_eq!(ok(&run(&["count", "--unlabeled", "10"])), "512\n");
    let csv = ok(&run(&["count", "--t-labeled", "4", "--range", "--format", "csv"]));
    assert_eq!(csv, "n,t\n1,1\n2,2\n3,8\n4,46\n");
    let v = valid_json(&ok(&run(&["count", "--t-labeled", "12", "--format", "json"])));
    assert_eq!(v["t"], "17239953438");
    let v = valid_json(&ok(&run(&["count", "--isolated", "5", "--j", "2", "--format", "json"])));
    assert_eq!(v["t"], "40");
    valid_json(&ok(&run(&["count", "--asymptotic", "10", "--range", "--format", "json"])));
    valid_json(&ok(&run(&["count", "--bipartite", "2", "3", "--format", "json"])));
}

#[test]
fn sampling_is_deterministic_and_round_trips() {
    let args = ["sample", "--model", "uniform-labeled", "--n", "40", "--seed", "77"];
    let a = ok(&run(&args));
    assert_eq!(a, ok(&run(&args)));
    assert_ne!(a, ok(&run(&["sample", "--model", "uniform-labeled", "--n", "40", "--seed", "78"])));

    let dir = tempfile::tempdir().unwrap();
    let gpath = dir.path().join("g.txt");
    let cpath = dir.path().join("g.code");
    let g = gpath.to_str().unwrap();
    let c = cpath.to_str().unwrap();
    ok(&run(&[&args[..], &["--out", g]].concat()));
    assert_eq!(std::fs::read_to_string(g).unwrap(), a);
    ok(&run(&["encode", "--in", g, "--out", c]));
    let code = std::fs::read_to_string(c).unwrap();
    assert!(code.starts_with("code "));
    // Decoding yields the graph up to the peeling order recorded in the comment.
    let decoded = ok(&run(&["decode", "--in", c]));
    let re = ok(&run_stdin(&["encode"], &decoded));
    assert_eq!(re.lines().next(), code.lines().next());
    assert!(ok(&run(&["recognize", "--in", g])).starts_with("threshold graph"));
}

#[test]
fn thread_count_does_not_change_results() {
    let base = ["stats", "--model", "attachment:p=0.4", "--n", "30", "--reps", "300", "--seed", "5"];
    let one = ok(&run(&[&["--threads", "1"], &base[..]].concat()));
    let four = ok(&run(&[&["--threads", "4"], &base[..]].concat()));
    assert_eq!(one, four);
    let env = bin().args(base).env("THRESHOLDLAB_THREADS", "3").output().unwrap();
    assert_eq!(ok(&env), one);
    assert!(one.starts_with("d,mean_count,stderr,reps\n"));
    assert_eq!(one.lines().count(), 31);
}

#[test]
fn json_outputs_match_schema() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["sample", "--model", "uniform-unlabeled", "--n", "6", "--format", "json"],
        vec!["sample", "--model", "attachment:p=0.2", "--n", "6", "--emit", "code", "--format", "json"],
        vec!["sample", "--model", "blocks-labeled", "--n", "6", "--count", "3", "--format", "json"],
        vec!["sample", "--model", "weights:dist=normal,t=1", "--n", "6", "--emit", "degrees", "--format", "json"],
        vec!["sample", "--model", "bip-attachment:p1=0.3,p2=0.6", "--n1", "3", "--n2", "2", "--format", "json"],
        vec!["sample", "--model", "bip-uniform", "--n1", "3", "--n2", "2", "--emit", "degrees", "--format", "json"],
        vec!["stats", "--model", "uniform-labeled", "--n", "8", "--reps", "20", "--statistic", "induced", "--format", "json"],
        vec!["stats", "--model", "uniform-labeled", "--n", "8", "--reps", "0", "--format", "json"],
        vec!["limit", "--model", "attachment:p=0.3", "--format", "json"],
        vec!["limit", "--model", "weights:dist=two-level,p=0.4", "--format", "json"],
        vec!["limit", "--model", "bip-attachment:p1=0.2,p2=0.5", "--format", "json"],
    ];
    for args in cases {
        valid_json(&ok(&run(&args)));
    }
    let v = valid_json(&ok(&run_stdin(&["encode", "--format", "json"], "n 3\n1 2\n1 3\n2 3\n")));
    assert_eq!(v["code"], "11");
    let v = valid_json(&ok(&run(&["decode", "--code", "011", "--format", "json"])));
    assert_eq!(v["edges"].as_array().unwrap().len(), 5);
    let v = valid_json(&ok(&run_stdin(&["spectrum", "--format", "json", "--check"], "code 001\n")));
    assert_eq!(v["eigenvalues"], serde_json::json!([0, 1, 1, 4]));
    assert_eq!(v["checked"], true);
    let v = valid_json(&ok(&run_stdin(&["recognize", "--format", "json"], "b 2 2\n1 1\n1 2\n2 1\n")));
    assert_eq!(v["threshold"], true);
}

#[test]
fn recognition_failure_reports_witness() {
    let p4 = "n 4\n1 2\n2 3\n3 4\n";
    let out = run_stdin(&["recognize"], p4);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("P4"));
    let out = run_stdin(&["recognize", "--format", "json"], p4);
    assert_eq!(out.status.code(), Some(1));
    let v = valid_json(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(v["threshold"], false);
    assert_eq!(v["pattern"], "P4");
    let out = run_stdin(&["recognize", "--format", "json"], "b 2 2\n1 1\n2 2\n");
    assert_eq!(out.status.code(), Some(1));
    let v = valid_json(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(v["pattern"], "2K2");
    // Non-threshold graphs are rejected by encode and spectrum too.
    assert_eq!(run_stdin(&["encode"], p4).status.code(), Some(1));
    assert_eq!(run_stdin(&["spectrum"], p4).status.code(), Some(1));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["sample", "--n", "3"]).status.code(), Some(2));
    assert_eq!(run(&["sample", "--model", "nope", "--n", "3"]).status.code(), Some(2));
    assert_eq!(run(&["sample", "--model", "attachment", "--n", "3"]).status.code(), Some(2));
    assert_eq!(run(&["sample", "--model", "attachment:p=0.5,q=1", "--n", "3"]).status.code(), Some(2));
    assert_eq!(run(&["sample", "--model", "attachment:p=1.5", "--n", "3"]).status.code(), Some(2));
    assert_eq!(run(&["sample", "--model", "uniform-labeled"]).status.code(), Some(2));
    assert_eq!(
        run(&["sample", "--model", "bip-uniform", "--n1", "2", "--n2", "2", "--emit", "code"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["stats", "--model", "uniform-labeled", "--n", "4", "--statistic", "x"]).status.code(), Some(2));
    assert_eq!(run(&["--threads", "0", "count", "--t-labeled", "3"]).status.code(), Some(2));
    assert_eq!(run(&["decode", "--code", "012"]).status.code(), Some(1));
    assert_eq!(run(&["recognize", "--in", "/nonexistent/file"]).status.code(), Some(1));
    assert_eq!(run(&["limit", "--model", "fixed-weights:w=1/2,t=1"]).status.code(), Some(1));
    assert_eq!(run(&["count", "--isolated", "3", "--j", "5"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn spectrum_formats() {
    let star = "code 001\n";
    assert_eq!(ok(&run_stdin(&["spectrum"], star)), "0 1 1 4\n");
    assert_eq!(ok(&run_stdin(&["spectrum", "--format", "hist"], star)), "0 1\n1 2\n4 1\n");
    let csv = ok(&run_stdin(&["spectrum", "--format", "csv", "--check"], star));
    assert_eq!(csv.lines().next(), Some("eigenvalue,multiplicity,normalized"));
    let g = ok(&run(&["sample", "--model", "uniform-labeled", "--n", "60", "--seed", "4"]));
    ok(&run_stdin(&["spectrum", "--check"], &g));
}

#[test]
fn limit_csv_and_boundary() {
    let cdf = ok(&run(&["limit", "--model", "uniform-labeled"]));
    assert_eq!(cdf, "x,cdf_left,cdf\n0,0,0\n1,1,1\n");
    let b = ok(&run(&["limit", "--model", "upper-set", "--boundary"]));
    assert!(b.starts_with("x,y\n"));
    let v = valid_json(&ok(&run(&["limit", "--model", "upper-set:p=0.3", "--format", "json"])));
    let w = valid_json(&ok(&run(&["limit", "--model", "attachment:p=0.3", "--format", "json"])));
    assert_eq!(v["cdf"], w["cdf"]);
}

#[test]
fn selftest_listing_and_filter() {
    let list = ok(&run(&["selftest", "--list"]));
    assert_eq!(list.lines().count(), 10);
    for name in ["counting", "spectrum", "measures"] {
        assert!(list.contains(name));
    }
    let out = ok(&run(&["selftest", "--only", "counting"]));
    assert!(out.starts_with("PASS counting"), "{out}");
    assert_eq!(run(&["selftest", "--only", "nothing"]).status.code(), Some(2));
}

#[test]
fn representation_via_out_and_json_flag() {
    let args = ["sample", "--model", "uniform-labeled", "--n", "5", "--seed", "7", "--out", "code"];
    let a = ok(&run(&args));
    assert!(a.starts_with("code "), "{a}");
    assert_eq!(a, ok(&run(&args)));
    let d = ok(&run(&["sample", "--model", "uniform-labeled", "--n", "5", "--reps", "3", "--out", "degrees"]));
    assert_eq!(d.lines().count(), 3);
    let e = ok(&run(&["sample", "--model", "uniform-labeled", "--n", "5", "--out", "edges"]));
    assert!(e.starts_with("n 5\n"));
    let v = valid_json(&ok(&run(&["count", "--t-labeled", "10", "--json"])));
    assert_eq!(v, serde_json::json!({"n": 10, "t": "62749906"}));
    assert_eq!(run(&["count", "--t-labeled", "3", "--json", "--format", "csv"]).status.code(), Some(2));
    let grid = ok(&run(&["limit", "--model", "uniform-labeled", "--resolution", "4"]));
    assert_eq!(grid.lines().count(), 6);
    assert!(grid.contains("\n0.5,0.5,0.5\n"));
}
