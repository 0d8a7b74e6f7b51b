use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn boxfacts(dir: &Path, args: &[&str]) -> Output {
    let out = Command::new(env!("CARGO_BIN_EXE_boxfacts"))
        .arg("--out-dir")
        .arg(dir)
        .args(args)
        .output()
        .expect("binary runs");
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn synth(dir: &Path, games: usize) -> String {
    boxfacts(dir, &["--seed", "11", "synth", "--games", &games.to_string()]);
    dir.join("synth.json").display().to_string()
}

fn json_lines(path: &Path) -> Vec<Value> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn report(dir: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join("report.json")).unwrap()).unwrap()
}

#[test]
fn purify_log_drops_only_unlicensed_sentences() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = synth(dir.path(), 30);
    boxfacts(dir.path(), &["purify", &corpus]);
    let logs = json_lines(&dir.path().join("retention.jsonl"));
    assert_eq!(logs.len(), 30);
    for log in &logs {
        for s in log["sentences"].as_array().unwrap() {
            if s["kept"] == false && s["round"] == 1 {
                assert_eq!(s["licensed"], 0, "{s}");
            }
        }
    }
    let plans = json_lines(&dir.path().join("plans.jsonl"));
    assert!(plans.iter().all(|p| p["plan"].as_array().unwrap().len() >= 5));
}

#[test]
fn self_evaluation_is_perfect() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = synth(dir.path(), 20);
    let samples: Vec<Value> = serde_json::from_str(&std::fs::read_to_string(&corpus).unwrap()).unwrap();
    let lines: Vec<String> = samples
        .iter()
        .map(|s| s["summary"].as_array().unwrap().iter().map(|t| t.as_str().unwrap()).collect::<Vec<_>>().join(" "))
        .collect();
    let sys = dir.path().join("sys.txt");
    std::fs::write(&sys, lines.join("\n") + "\n").unwrap();
    boxfacts(dir.path(), &["evaluate", &corpus, sys.to_str().unwrap()]);
    let r = report(dir.path());
    for key in ["cs_precision", "cs_recall", "cs_f1", "co_dld", "rg_precision"] {
        assert_eq!(r[key], 1.0, "{key}");
    }
    assert_eq!(r["bleu"]["bleu"], 1.0);
}

#[test]
fn template_outputs_are_grounded() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = synth(dir.path(), 20);
    boxfacts(dir.path(), &["template", &corpus]);
    let tmpl = dir.path().join("template.txt");
    boxfacts(dir.path(), &["evaluate", &corpus, tmpl.to_str().unwrap()]);
    assert_eq!(report(dir.path())["rg_precision"], 1.0);
}

#[test]
fn split_manifest_records_seed_and_partition() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = synth(dir.path(), 40);
    boxfacts(dir.path(), &["--seed", "5", "split", &corpus]);
    let m: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("split_manifest.json")).unwrap()).unwrap();
    assert_eq!(m["seed"], 5);
    let mut all: Vec<u64> = ["train", "valid", "test"]
        .iter()
        .flat_map(|k| m["indices"][k].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()))
        .collect();
    assert_eq!(m["indices"]["valid"].as_array().unwrap().len(), 6);
    all.sort_unstable();
    assert_eq!(all, (0..40).collect::<Vec<u64>>());

    let again = tempfile::tempdir().unwrap();
    boxfacts(again.path(), &["--seed", "5", "split", &corpus]);
    for f in ["split_manifest.json", "train.json", "test.json"] {
        assert_eq!(
            std::fs::read(dir.path().join(f)).unwrap(),
            std::fs::read(again.path().join(f)).unwrap()
        );
    }
}

#[test]
fn replenish_extract_and_stats_write_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = synth(dir.path(), 10);
    boxfacts(dir.path(), &["replenish", &corpus]);
    boxfacts(dir.path(), &["extract-plan", &corpus]);
    let out = boxfacts(dir.path(), &["stats", &corpus]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("avg plan length"));
    assert_eq!(json_lines(&dir.path().join("plans.jsonl")).len(), 10);
    let stats: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("stats.json")).unwrap()).unwrap();
    assert_eq!(stats["examples"], 10);
    assert!(dir.path().join("replenished.json").exists());
}

#[test]
fn bad_input_fails_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_boxfacts"))
        .args(["--ratios", "0.5,0.5,0.5", "stats", "missing.json"])
        .output()
        .unwrap();
    assert!(!out.status.success());
    let out = Command::new(env!("CARGO_BIN_EXE_boxfacts"))
        .arg("--out-dir")
        .arg(dir.path())
        .args(["stats", "does-not-exist.json"])
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("does-not-exist.json"));
}
