//! End-to-end runs of the `bridgedepth` binary.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bridgedepth"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("run bridgedepth")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, content: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, content).unwrap();
    path.to_str().unwrap().to_string()
}

fn generated(family: &str, t: &str, name: &str) -> String {
    let o = run(&["gen", family, t]);
    assert!(o.status.success());
    scratch(name, &stdout(&o))
}

fn fixture() -> String {
    concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../core/tests/fixtures/degree_bound.inst"
    )
    .to_string()
}

#[test]
fn generators_write_canonical_files() {
    let p4 = stdout(&run(&["gen", "truncated", "2"]));
    assert_eq!(p4, "p 4 3\ne 1 2\ne 1 3\ne 3 4\n");
    let tp3 = stdout(&run(&["gen", "triangle-path", "3"]));
    assert!(tp3.starts_with("p 9 11\n"));
    let c5 = stdout(&run(&["gen", "cycle", "5"]));
    assert_eq!(c5, "p 5 5\ne 1 2\ne 1 5\ne 2 3\ne 3 4\ne 4 5\n");
    assert_eq!(run(&["gen", "cycle", "2"]).status.code(), Some(2));
}

#[test]
fn bridge_depth_reports() {
    let u8 = generated("truncated", "8", "u8.g");
    assert!(stdout(&run(&["bd", &u8])).starts_with("bd=3\n"));
    let path = generated("path", "6", "p6.g");
    let out = stdout(&run(&["bd", &path]));
    assert!(out.starts_with("bd=1\n"));
    assert!(out.contains("td=3 tw=1 fvs=0"));
    let c3 = scratch("c3.g", "p 3 3\ne 1 2\ne 2 3\ne 1 3\n");
    assert!(stdout(&run(&["bd", &c3])).starts_with("bd=2\n"));
    let json = stdout(&run(&["bd", &c3, "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(json.trim()).unwrap();
    assert_eq!(v["schema"], "bridgedepth.report/1");
    assert_eq!(v["bd"], 2);
}

#[test]
fn blocking_sets() {
    let tp2 = generated("triangle-path", "2", "tp2.g");
    let out = stdout(&run(&["mbs", &tp2]));
    assert!(out.starts_with("mbs=4\n"), "{out}");
    let u8 = generated("truncated", "8", "u8-mbs.g");
    assert!(stdout(&run(&["mbs", &u8])).starts_with("mbs=8\n"));
    // C6 is bipartite; all of V blocks
    let c6 = generated("cycle", "6", "c6.g");
    let out = stdout(&run(&["shrink", &c6, "1,2,3,4,5,6", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert!(v["output"].as_array().unwrap().len() <= 2);
    assert_eq!(v["bipartite"], true);
    // {1} alone does not block C6
    assert_eq!(run(&["shrink", &c6, "1"]).status.code(), Some(2));
}

#[test]
fn minors() {
    let tp2 = generated("triangle-path", "2", "tp2-minor.g");
    assert!(stdout(&run(&["nm", &tp2])).starts_with("nm=2\n"));
    assert!(stdout(&run(&["tpm", &tp2])).starts_with("tpm=2\n"));
    let big = generated("grid", "4", "grid4.g");
    assert_eq!(run(&["nm", &big]).status.code(), Some(3));
}

#[test]
fn kernelize_writes_instance_and_trace() {
    let out_path = scratch("kernel.inst", "");
    let trace_path = scratch("kernel.jsonl", "");
    let o = run(&[
        "kernelize",
        &fixture(),
        "--k",
        "3",
        "--out",
        &out_path,
        "--trace",
        &trace_path,
    ]);
    assert!(o.status.success());
    let kernel = fs::read_to_string(&out_path).unwrap();
    assert!(kernel.starts_with("p "));
    assert!(kernel.contains("\nc 0\n"));
    let trace = fs::read_to_string(&trace_path).unwrap();
    assert!(trace
        .lines()
        .all(|l| l.contains("\"schema\":\"bridgedepth.trace/1\"")));
    // the kernel file parses back
    assert!(run(&["dump", &out_path]).status.success());
}

#[test]
fn kernelize_c_zero_is_identity() {
    let inst = scratch("c0.inst", "p 2 1\nk 1\nc 0\nx 1\nx 2\ne 1 2\n");
    let o = run(&["kernelize", &inst]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("p 2 1\nk 1\nc 0\nx 1\nx 2\ne 1 2\n"));
}

#[test]
fn kernelize_rejects_bad_instances() {
    let no_mod = scratch("nomod.inst", "p 3 3\nk 1\nc 1\ne 1 2\ne 2 3\ne 1 3\n");
    let o = run(&["kernelize", &no_mod]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bd(G \\ X) = 2"));
    let bad_x = scratch("badx.inst", "p 2 1\nk 1\nc 1\nx 7\ne 1 2\n");
    assert_eq!(run(&["kernelize", &bad_x]).status.code(), Some(2));
    let unknown = scratch("unknown.inst", "p 2 1\nq 1\ne 1 2\n");
    assert_eq!(run(&["dump", &unknown]).status.code(), Some(2));
}

#[test]
fn checked_mode_reports_assertions() {
    let o = run(&["kernelize", &fixture(), "--checked"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).contains("# violation tree_degree"));
    // the same instance with a small k short-circuits before the check
    assert!(run(&["kernelize", &fixture(), "--checked", "--k", "2"])
        .status
        .success());
}

#[test]
fn usage_and_exit_codes() {
    assert_eq!(run(&[]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&["bd", "/nonexistent/file"]).status.code(), Some(2));
    let u8 = generated("truncated", "8", "u8-cap.g");
    assert_eq!(run(&["bd", &u8, "--cap", "5"]).status.code(), Some(3));
    assert_eq!(run(&["selftest", "huge"]).status.code(), Some(2));
}

#[test]
fn selftest_is_deterministic() {
    let a = run(&["selftest", "smoke", "--format", "json", "--jobs", "1"]);
    let b = run(&["selftest", "smoke", "--format", "json", "--jobs", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let lines = stdout(&a);
    assert_eq!(lines.lines().count(), 10);
    for l in lines.lines() {
        let v: serde_json::Value = serde_json::from_str(l).unwrap();
        assert_eq!(v["schema"], "bridgedepth.selftest/1");
        assert_eq!(v["violations"], 0);
    }
    let one = stdout(&run(&["selftest", "0", "--sweep", "kernel"]));
    assert!(one.starts_with("PASS kernel "));
    assert_eq!(one.lines().count(), 1);
}

#[test]
fn kernelize_is_deterministic() {
    let a = run(&["kernelize", &fixture(), "--format", "json", "--k", "11"]);
    let b = run(&["kernelize", &fixture(), "--format", "json", "--k", "11"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}
