use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn obsmod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_obsmod")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_then_score_then_oracle() {
    let dir = TempDir::new().unwrap();
    let graph = dir.path().join("tri.txt");
    let o = obsmod(&["gen", "triangles", "3", "--out", s(&graph)]);
    assert!(o.status.success());
    let part = write(&dir, "part.txt", "0 a\n1 a\n2 a\n3 b\n4 b\n5 b\n6 c\n7 c\n8 c\n");
    let o = obsmod(&["score", s(&graph), "--partition", s(&part)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("coverage 1 "), "{text}");
    assert!(text.contains("score 2/3 "), "{text}");
    let o = obsmod(&["--mode", "float", "score", s(&graph), "--partition", s(&part)]);
    assert!(stdout(&o).lines().any(|l| l.starts_with("score 0.66666")));
    let o = obsmod(&["oracle", "qstar", s(&graph)]);
    assert!(stdout(&o).starts_with("# q* = 2/3"));
    let o = obsmod(&["oracle", "qk", s(&graph), "--k", "2"]);
    assert!(stdout(&o).starts_with("q_<=2 = "));
}

#[test]
fn five_cycle_oracle() {
    let dir = TempDir::new().unwrap();
    let graph = write(&dir, "c5.txt", "0 1\n1 2\n2 3\n3 4\n4 0\n");
    let o = obsmod(&["oracle", "qstar", s(&graph)]);
    assert!(stdout(&o).starts_with("# q* = 2/25"), "{}", stdout(&o));
}

#[test]
fn lambda_oracle() {
    let o = obsmod(&["oracle", "lambda", "1", "1", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("lambda 1/2"), "{text}");
    assert!(text.contains("gamma 1/2"));
}

#[test]
fn optimize_and_fatten_write_partitions() {
    let dir = TempDir::new().unwrap();
    let graph = dir.path().join("g.txt");
    assert!(obsmod(&["gen", "clique-matching", "3", "3", "--out", s(&graph)]).status.success());
    let part = dir.path().join("best.txt");
    let o = obsmod(&["optimize", s(&graph), "--method", "brute", "--out", s(&part)]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("2/3"));
    assert_eq!(fs::read_to_string(&part).unwrap().lines().count(), 9);
    let o = obsmod(&["optimize", s(&graph), "--runs", "5", "--refine", "off", "--seed", "3"]);
    assert!(o.status.success());
    let o = obsmod(&["fatten", s(&graph), "--eta", "0.6", "--partition", s(&part)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let parts: std::collections::BTreeSet<String> =
        stdout(&o).lines().map(|l| l.split_whitespace().nth(1).unwrap().to_string()).collect();
    assert_eq!(parts.len(), 1);
}

#[test]
fn sampling_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let graph = dir.path().join("g.txt");
    assert!(obsmod(&["gen", "two-cliques", "10", "--out", s(&graph)]).status.success());
    for flag in [["--p", "0.5"], ["--budget", "7"], ["--budget-per-vertex", "0.5"], ["--vertices", "6"]] {
        let run = || stdout(&obsmod(&["--seed", "9", "sample", s(&graph), flag[0], flag[1]]));
        assert_eq!(run(), run());
    }
    let o = obsmod(&["sample", s(&graph), "--p", "0.5", "--budget", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn experiment_csv_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let graph = dir.path().join("g.txt");
    assert!(obsmod(&["gen", "triangles", "6", "--out", s(&graph)]).status.success());
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for out in [&a, &b] {
        let o = obsmod(&[
            "--seed", "4", "--out", s(out), "experiment", "fig1", s(&graph), "--grid", "0.3,0.7", "--reps", "5", "--runs", "3",
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("experiment,param_name,param_value,replicate,seed,score,score_kind,runtime_ms")
    );
    assert_eq!(lines.count(), 10);

    let o = obsmod(&["--format", "svg", "experiment", "fig1", s(&graph), "--grid", "0.5", "--reps", "3", "--runs", "2"]);
    assert!(stdout(&o).contains("<svg"));
}

#[test]
fn statistical_experiments_run() {
    let dir = TempDir::new().unwrap();
    let graph = dir.path().join("g.txt");
    assert!(obsmod(&["gen", "triangles", "5", "--out", s(&graph)]).status.success());
    let o = obsmod(&["experiment", "thm1", s(&graph), "--p", "1", "--eps", "0.05", "--reps", "10", "--runs", "3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = obsmod(&["experiment", "thm2", s(&graph), "--p", "0.8", "--reps", "10", "--runs", "3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("seed,observed_deficit"));
    let o = obsmod(&["experiment", "qbar", "--n", "30", "--c", "0.5,8", "--reps", "10", "--runs", "3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = obsmod(&["experiment", "undersample", s(&graph), "--p0", "0.4", "--grid", "0.4", "--reps", "4", "--runs", "2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let graph = dir.path().join("g.txt");
    assert!(obsmod(&["gen", "triangles", "4", "--out", s(&graph)]).status.success());

    // a reference far above anything reachable makes every replicate a failure
    let o = obsmod(&[
        "experiment", "thm1", s(&graph), "--p", "0.5", "--eps", "0.01", "--reference", "0.99", "--reps", "10", "--runs", "2",
    ]);
    assert_eq!(o.status.code(), Some(1));

    assert_eq!(obsmod(&["score"]).status.code(), Some(2));
    assert_eq!(obsmod(&["gen", "star-matching", "3", "2"]).status.code(), Some(2));
    let part = write(&dir, "p.txt", "0 a\n");
    assert_eq!(obsmod(&["score", s(&graph), "--partition", s(&part)]).status.code(), Some(2));
    let bad = write(&dir, "bad.txt", "0 1 2 3\n");
    assert_eq!(obsmod(&["oracle", "qstar", s(&bad)]).status.code(), Some(2));
    let all = write(&dir, "all.txt", &(0..12).map(|v| format!("{v} a\n")).collect::<String>());
    assert_eq!(obsmod(&["fatten", s(&graph), "--eta", "2", "--partition", s(&all)]).status.code(), Some(2));

    let missing = dir.path().join("missing.txt");
    assert_eq!(obsmod(&["oracle", "qstar", s(&missing)]).status.code(), Some(3));
    let unwritable = dir.path().join("no/such/dir/out.txt");
    assert_eq!(obsmod(&["gen", "triangles", "2", "--out", s(&unwritable)]).status.code(), Some(3));
}
