use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn dyncover(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dyncover"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn gen_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["a.txt", "b.txt"] {
        assert!(dyncover(&["gen", "--seed", "9", "--out", name], dir.path()).status.success());
    }
    let a = std::fs::read(dir.path().join("a.txt")).unwrap();
    let b = std::fs::read(dir.path().join("b.txt")).unwrap();
    assert_eq!(a, b);
    assert!(String::from_utf8(a).unwrap().contains("# generator seed 9"));
}

#[test]
fn run_writes_csv_and_report_agrees() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(dyncover(&["gen", "--seed", "1", "--steps", "200", "--out", "i.json"], d).status.success());
    let out = dyncover(
        &[
            "run", "--in", "i.json", "--algo", "recompute", "--transform", "lf", "--epsilon", "0.5", "--out",
            "r.csv", "--summary", "s.json", "--gnuplot", "g.dat",
        ],
        d,
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let summary: Value = serde_json::from_str(&std::fs::read_to_string(d.join("s.json")).unwrap()).unwrap();
    assert_eq!(summary["passed"], true);
    assert_eq!(summary["steps"], 200);

    let csv = std::fs::read_to_string(d.join("r.csv")).unwrap();
    assert!(csv.starts_with(
        "step,kind,element,recourse,output_size,cost_output,cost_background,opt_or_lb,ratio,interval,phase"
    ));
    assert_eq!(csv.lines().count(), 201);

    let rep = dyncover(&["report", "--in", "r.csv"], d);
    assert!(rep.status.success());
    let agg = json(&rep);
    assert_eq!(agg["steps"], 200);
    assert_eq!(agg["max_recourse"], summary["max_recourse"]);
    assert_eq!(std::fs::read_to_string(d.join("g.dat")).unwrap().lines().count(), 201);
}

#[test]
fn solve_static_reports_cover_and_bound() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(
        d.join("w.txt"),
        "setcover v1 n=4 C=1\nS 1 1 1 2\nS 2 1 3 4\nS 3 1 1 2 3\nTRACE\n+ 1\n+ 2\n+ 3\n+ 4\n",
    )
    .unwrap();
    let greedy = json(&dyncover(&["solve-static", "--algo", "greedy", "--in", "w.txt"], d));
    assert_eq!(greedy["cost"], 2.0);
    assert_eq!(greedy["cover"], serde_json::json!([2, 3]));
    assert_eq!(greedy["charges"]["4"], 1.0);
    let exact = json(&dyncover(&["solve-static", "--algo", "exact", "--in", "w.txt"], d));
    assert_eq!(exact["cost"], 2.0);
    assert_eq!(exact["lower_bound"], 2.0);
    let pd = json(&dyncover(&["solve-static", "--algo", "pd-all", "--in", "w.txt"], d));
    assert_eq!(pd["feasible"], true);
    assert!(pd["lower_bound"].as_f64().unwrap() <= 2.0);
}

#[test]
fn check_rejects_bad_trace() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("ok.txt"), "setcover v1 n=2 C=1\nS 1 1 1\nTRACE\n+ 1\n- 1\n").unwrap();
    let ok = dyncover(&["check", "--in", "ok.txt"], d);
    assert!(ok.status.success());
    assert_eq!(json(&ok)["f"], 1);

    std::fs::write(d.join("bad.txt"), "setcover v1 n=2 C=1\nS 1 1 1\nTRACE\n- 1\n").unwrap();
    assert!(!dyncover(&["check", "--in", "bad.txt"], d).status.success());
    std::fs::write(d.join("cost.txt"), "setcover v1 n=2 C=1\nS 1 0 1\nTRACE\n").unwrap();
    assert!(!dyncover(&["check", "--in", "cost.txt"], d).status.success());
}
