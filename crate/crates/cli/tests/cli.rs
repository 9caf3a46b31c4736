use std::path::Path;
use std::process::{Command, Output};

fn dynadisp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dynadisp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

const FIG12: &str = "n=4 k=3 T=6 schedule=golden_fig12 algorithm=alg3 placement=0,0,1 max_rounds=60\n";

#[test]
fn run_writes_a_trace_that_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let sc = write(dir.path(), "fig12.scn", FIG12);
    let trace = dir.path().join("fig12.trace").display().to_string();
    let o = dynadisp(&["run", &sc, "--trace-out", &trace]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("explored_at=3"));
    assert!(out.contains("dispersed_at=never"));

    let v = dynadisp(&["verify", &trace]);
    assert_eq!(v.status.code(), Some(0));
    // metrics recomputed from the file match the live run
    let keys = |s: &str| -> Vec<String> { s.lines().filter(|l| l.contains('=')).map(String::from).collect() };
    assert_eq!(keys(&stdout(&v)), keys(&out));

    let c = dynadisp(&["classify", &trace, "--property", "t_path", "--T", "6"]);
    assert_eq!(c.status.code(), Some(0));
    assert!(stdout(&c).contains("minimal_T=6"));
}

#[test]
fn corrupted_trace_is_a_violation() {
    let dir = tempfile::tempdir().unwrap();
    let sc = write(dir.path(), "fig12.scn", FIG12);
    let trace = dir.path().join("t.trace");
    let o = dynadisp(&["run", &sc, "--trace-out", trace.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&trace).unwrap();
    // teleport agent 3 in the first after-line
    let mut done = false;
    let bad: Vec<String> = text
        .lines()
        .map(|l| {
            if !done && l.starts_with("after:") {
                done = true;
                let mut parts: Vec<&str> = l.trim_start_matches("after:").split_whitespace().collect();
                parts[2] = "3";
                format!("after: {}", parts.join(" "))
            } else {
                l.to_string()
            }
        })
        .collect();
    let bad_path = write(dir.path(), "bad.trace", &(bad.join("\n") + "\n"));
    let v = dynadisp(&["verify", &bad_path]);
    assert_eq!(v.status.code(), Some(1), "{}", stdout(&v));
    assert!(stdout(&v).contains("! "));
}

#[test]
fn classify_schedule_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "s.txt",
        "n=3 rounds=2\nr=0: 0-1:0,0\nr=1: 1-2:0,0\n",
    );
    let ok = dynadisp(&["classify", &f, "--property", "connectivity_time", "--T", "2"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("holds=true"));
    let no = dynadisp(&["classify", &f, "--property", "t_interval", "--T", "1"]);
    assert_eq!(no.status.code(), Some(1));
    assert!(stdout(&no).contains("witness="));
}

#[test]
fn demo_and_usage_errors() {
    let o = dynadisp(&["demo", "kt_lower"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("failed=0"));
    assert_eq!(dynadisp(&["demo", "no_such_demo"]).status.code(), Some(2));
    assert_eq!(dynadisp(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(dynadisp(&["run", "/nonexistent.scn"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.scn", "n=3 k=4 T=1 schedule=random algorithm=alg1_explicit\n");
    let o = dynadisp(&["run", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn sweep_reports_aggregates() {
    let dir = tempfile::tempdir().unwrap();
    let sc = write(
        dir.path(),
        "t.scn",
        "n=8 k=8 T=2 schedule=random property=t_path algorithm=alg1_explicit placement=colocated\n",
    );
    let o = dynadisp(&["sweep", &sc, "--seeds", "0..20"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("runs=20"));
    assert!(out.contains("violations=0"));
    assert!(out.contains("dispersed_at.missed=0"));
    assert_eq!(dynadisp(&["sweep", &sc, "--seeds", "banana"]).status.code(), Some(2));
}
