//! The `privrec` binary: subcommands, exit codes and reproducibility.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn privrec(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_privrec"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(dir: &Path, args: &[&str]) -> Output {
    let out = privrec(dir, args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}\nstderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

const SMALL: &[&str] = &["--jobs", "120", "--candidates", "12", "--open-jobs", "30", "--topics", "4", "--seed", "7"];

fn synth(dir: &Path, out: &str) {
    let mut args = vec!["corpus", "synth"];
    args.extend_from_slice(SMALL);
    args.extend_from_slice(&["-o", out]);
    ok(dir, &args);
}

fn tree(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<(String, Vec<u8>)> = walk(dir)
        .into_iter()
        .map(|p| (p.strip_prefix(dir).unwrap().display().to_string(), fs::read(&p).unwrap()))
        .collect();
    files.sort();
    files
}

fn walk(dir: &Path) -> Vec<std::path::PathBuf> {
    let mut out = Vec::new();
    for e in fs::read_dir(dir).unwrap() {
        let p = e.unwrap().path();
        if p.is_dir() {
            out.extend(walk(&p));
        } else {
            out.push(p);
        }
    }
    out
}

#[test]
fn synth_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    synth(dir.path(), "a");
    synth(dir.path(), "b");
    let (a, b) = (tree(&dir.path().join("a")), tree(&dir.path().join("b")));
    assert!(a.len() > 100);
    assert_eq!(a, b);
}

#[test]
fn resolved_config_is_logged() {
    let dir = tempfile::tempdir().unwrap();
    let out = ok(dir.path(), &["netsim", "run", "--nodes", "3"]);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("resolved config"), "{err}");
    assert!(err.contains("\"fanout\":2"), "defaults are logged too: {err}");
    assert!(err.contains("\"nodes\":3"));
}

#[test]
fn perturb_records_epsilon_and_refuses_a_second_pass() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(d, &["profile", "build", "--keywords", "python,sql,statistics", "-o", "c.profile"]);
    ok(d, &["profile", "perturb", "--epsilon", "1.0986", "--k", "1", "--seed", "1", "-i", "c.profile", "-o", "c_dp.profile"]);
    let bytes = fs::read(d.join("c_dp.profile")).unwrap();
    assert_eq!(&bytes[..4], b"LDPM");
    assert_eq!(bytes[6], 1, "perturbed flag");
    assert_eq!(f64::from_le_bytes(bytes[13..21].try_into().unwrap()), 1.0986);

    let again = privrec(d, &["profile", "perturb", "--epsilon", "ln3", "-i", "c_dp.profile", "-o", "x.profile"]);
    assert_eq!(again.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&again.stderr).contains("state error"));
    assert!(!d.join("x.profile").exists());

    let wrong_k = privrec(d, &["profile", "perturb", "--epsilon", "ln3", "--k", "2", "-i", "c.profile", "-o", "y.profile"]);
    assert_eq!(wrong_k.status.code(), Some(1));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(privrec(d, &["eval", "sweep", "--bogus"]).status.code(), Some(2));
    assert_eq!(privrec(d, &["nonsense"]).status.code(), Some(2));
    assert_eq!(privrec(d, &["profile", "perturb", "--epsilon", "x", "-i", "a", "-o", "b"]).status.code(), Some(2));
    assert_eq!(privrec(d, &["netsim", "run", "--topology", "star"]).status.code(), Some(2));
    let help = privrec(d, &["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&help.stdout).contains("recommend"));
    // domain errors
    assert_eq!(privrec(d, &["profile", "perturb", "--epsilon", "1", "-i", "missing", "-o", "b"]).status.code(), Some(1));
    assert_eq!(privrec(d, &["netsim", "run", "--fanout", "0"]).status.code(), Some(1));
    fs::write(d.join("bad.txt"), "round 3\nfly 2\n").unwrap();
    let bad = privrec(d, &["netsim", "run", "--script", "bad.txt"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("line 2"));
}

#[test]
fn recommendations_from_a_saved_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    synth(d, "corpus");
    ok(d, &["profile", "build", "--corpus", "corpus", "--candidate", "cand000", "-o", "me.profile"]);
    let jobs = ok(d, &["recommend", "jobs", "--profile", "me.profile", "--corpus", "corpus", "--n", "5"]);
    let text = String::from_utf8(jobs.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "rank\tid\tscore");
    assert_eq!(lines.len(), 6);
    assert!(lines[1..].iter().all(|l| l.contains("open")));

    let strict = ok(d, &["recommend", "jobs", "--profile", "me.profile", "--corpus", "corpus", "--threshold", "1.1"]);
    assert_eq!(String::from_utf8(strict.stdout).unwrap().lines().count(), 1);

    ok(d, &["recommend", "candidates", "--corpus", "corpus", "--job", "open00000", "--epsilon", "ln3", "--seed", "3", "-o", "a.tsv"]);
    ok(d, &["--threads", "1", "recommend", "candidates", "--corpus", "corpus", "--job", "open00000", "--epsilon", "ln3", "--seed", "3", "-o", "b.tsv"]);
    let a = fs::read_to_string(d.join("a.tsv")).unwrap();
    assert_eq!(a, fs::read_to_string(d.join("b.tsv")).unwrap());
    assert_eq!(a.lines().count(), 13, "12 candidates plus header");

    let unknown = privrec(d, &["recommend", "candidates", "--corpus", "corpus", "--job", "nope"]);
    assert_eq!(unknown.status.code(), Some(1));
}

#[test]
fn eval_sweep_writes_results_with_control_rows() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    synth(d, "corpus");
    ok(d, &[
        "eval", "sweep", "--corpus", "corpus", "--epsilons", "ln3,4", "--runs", "2",
        "--jobs-sample", "5", "--n", "5", "-o", "results.csv", "--summary", "summary.csv",
    ]);
    let results = fs::read_to_string(d.join("results.csv")).unwrap();
    let mut lines = results.lines();
    assert_eq!(lines.next(), Some("model,m,k,epsilon,job_id,run,precision_at_n,average_precision"));
    // bf + three bf-dp settings (ln3, 4, control 50), 2 runs x 5 jobs each
    assert_eq!(lines.count(), 4 * 10);
    let summary = fs::read_to_string(d.join("summary.csv")).unwrap();
    let rows: Vec<Vec<&str>> = summary.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 4);
    let bf: f64 = rows.iter().find(|r| r[0] == "bf").unwrap()[5].parse().unwrap();
    let control: f64 = rows.iter().find(|r| r[3] == "50").unwrap()[5].parse().unwrap();
    assert!((bf - control).abs() <= 0.01, "bf {bf} control {control}");

    ok(d, &[
        "eval", "params", "--corpus", "corpus", "--ms", "256,1024", "--ks", "1,2", "--runs", "1",
        "--jobs-sample", "3", "--n", "5", "-o", "grid.csv", "--summary", "grid_summary.csv",
    ]);
    let grid = fs::read_to_string(d.join("grid_summary.csv")).unwrap();
    assert_eq!(grid.lines().count(), 5);
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("run.toml"), "[netsim.run]\nnodes = 5\ntopology = \"full\"\nrounds = 7\n").unwrap();
    let out = ok(d, &["--config", "run.toml", "netsim", "run", "--rounds", "3", "-o", "r.json"]);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("\"nodes\":5") && err.contains("\"rounds\":3"), "{err}");
    let report = fs::read_to_string(d.join("r.json")).unwrap();
    assert!(report.contains("\"rounds_run\": 3"));
    assert!(report.contains("\"topology\": \"full\""));
}

#[test]
fn corpus_import_then_netsim_script() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let mut jobs = String::from("job_id\ttitle\tdescription\trequirements\n");
    for i in 0..10 {
        jobs.push_str(&format!("j{i}\tTitle {i}\tproject{i} work\tskill{i}\n"));
    }
    let mut apps = String::from("candidate_id\tjob_id\n");
    for i in 0..5 {
        apps.push_str(&format!("u1\tj{i}\nu2\tj{i}\n"));
    }
    apps.push_str("u3\tj0\n");
    fs::write(d.join("jobs.tsv"), jobs).unwrap();
    fs::write(d.join("apps.tsv"), apps).unwrap();
    let out = ok(d, &["corpus", "import", "--jobs", "jobs.tsv", "--applications", "apps.tsv", "--m", "512", "-o", "imported"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning: candidate u3 dropped"));
    let index = fs::read_to_string(d.join("imported/index.json")).unwrap();
    assert!(index.contains("\"m\": 512"));

    fs::copy(d.join("imported/profiles/000000.profile"), d.join("p.profile")).unwrap();
    fs::write(
        d.join("w.txt"),
        "subscribe 1 jobs\nsubscribe 2 jobs\npublish 0 jobs p.profile\nround 3\nfetch 2 @p.profile\n",
    )
    .unwrap();
    let args = ["netsim", "run", "--script", "w.txt", "--nodes", "6", "--topology", "ring", "--rounds", "8"];
    let a = ok(d, &args).stdout;
    assert_eq!(a, ok(d, &args).stdout);
    let text = String::from_utf8(a).unwrap();
    assert!(text.contains("\"result\": \"ok\""));
}
