//! Command-level behavior: exit codes, file outputs, determinism, and
//! the config-file/flag precedence.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn occnlp() -> Command {
    Command::new(env!("CARGO_BIN_EXE_occnlp"))
}

fn run(args: &[&str]) -> Output {
    occnlp().args(args).output().expect("binary runs")
}

fn assert_exit(output: &Output, code: i32) {
    assert_eq!(
        output.status.code(),
        Some(code),
        "stdout: {}\nstderr: {}",
        String::from_utf8_lossy(&output.stdout),
        String::from_utf8_lossy(&output.stderr)
    );
}

fn fixture_jsonl(n: usize) -> String {
    let labels = ["Fatigue", "Confusion", "Distraction"];
    let mut lines = Vec::new();
    for i in 0..n {
        let label = labels[i % 3];
        let keyword = label.to_lowercase();
        lines.push(format!(
            "{{\"id\":\"r{i}\",\"text\":\"case{i} crew {keyword} on {} roll\",\"labels\":[\"{label}\"],\
             \"reference_summary\":\"the crew suffered {keyword}\",\"generated_summary\":\"crew {keyword}\"}}",
            if i % 2 == 0 { "landing" } else { "takeoff" },
        ));
    }
    lines.join("\n") + "\n"
}

struct Workspace {
    dir: tempfile::TempDir,
}

impl Workspace {
    fn new(n_docs: usize) -> Self {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("raw.jsonl"), fixture_jsonl(n_docs)).unwrap();
        Workspace { dir }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn arg(&self, name: &str) -> String {
        self.path(name).to_string_lossy().into_owned()
    }

    fn ingest(&self) {
        let out = run(&[
            "ingest",
            "--input",
            &self.arg("raw.jsonl"),
            "--out",
            &self.arg("corpus.jsonl"),
            "--vocab",
            &self.arg("vocab.txt"),
        ]);
        assert_exit(&out, 0);
    }
}

#[test]
fn help_works_on_every_command() {
    for command in [
        "ingest",
        "split",
        "train-lda",
        "topics",
        "infer-topics",
        "train-clf",
        "predict",
        "eval",
    ] {
        let out = run(&[command, "--help"]);
        assert_exit(&out, 0);
        let text = String::from_utf8_lossy(&out.stdout);
        assert!(text.contains("--help"), "{command} help missing flags");
    }
    assert_exit(&run(&["--help"]), 0);
}

#[test]
fn unknown_flag_exits_2() {
    assert_exit(&run(&["ingest", "--no-such-flag"]), 2);
    assert_exit(&run(&["definitely-not-a-command"]), 2);
}

#[test]
fn ingest_writes_corpus_and_vocab() {
    let ws = Workspace::new(12);
    ws.ingest();
    let corpus = fs::read_to_string(ws.path("corpus.jsonl")).unwrap();
    assert_eq!(corpus.lines().count(), 12);
    assert!(corpus.contains("\"tokens\":["));
    let vocab = fs::read_to_string(ws.path("vocab.txt")).unwrap();
    assert!(vocab.starts_with("#occnlp-vocab v1 "));
}

#[test]
fn ingest_missing_file_exits_2() {
    let ws = Workspace::new(1);
    let out = run(&[
        "ingest",
        "--input",
        &ws.arg("nope.jsonl"),
        "--out",
        &ws.arg("corpus.jsonl"),
        "--vocab",
        &ws.arg("vocab.txt"),
    ]);
    assert_exit(&out, 2);
    assert!(!ws.path("corpus.jsonl").exists(), "no partial output");
}

#[test]
fn ingest_rerun_is_byte_identical() {
    let ws = Workspace::new(20);
    ws.ingest();
    let corpus_a = fs::read(ws.path("corpus.jsonl")).unwrap();
    let vocab_a = fs::read(ws.path("vocab.txt")).unwrap();
    ws.ingest();
    assert_eq!(corpus_a, fs::read(ws.path("corpus.jsonl")).unwrap());
    assert_eq!(vocab_a, fs::read(ws.path("vocab.txt")).unwrap());
}

fn split_counts(path: &Path) -> (usize, usize, usize) {
    let text = fs::read_to_string(path).unwrap();
    let count = |tag: &str| {
        text.lines()
            .filter(|l| l.contains(&format!("\"split\":\"{tag}\"")))
            .count()
    };
    (count("train"), count("val"), count("test"))
}

#[test]
fn split_100_docs_default_ratios() {
    let ws = Workspace::new(100);
    ws.ingest();
    let out = run(&[
        "split",
        "--input",
        &ws.arg("corpus.jsonl"),
        "--out",
        &ws.arg("split.jsonl"),
        "--ratios",
        "0.85,0.05,0.10",
        "--seed",
        "7",
    ]);
    assert_exit(&out, 0);
    assert_eq!(split_counts(&ws.path("split.jsonl")), (85, 5, 10));
}

#[test]
fn split_same_seed_same_partition() {
    let ws = Workspace::new(40);
    ws.ingest();
    for out_name in ["a.jsonl", "b.jsonl"] {
        let out = run(&[
            "split",
            "--input",
            &ws.arg("corpus.jsonl"),
            "--out",
            &ws.arg(out_name),
            "--ratios",
            "0.7,0.15,0.15",
            "--seed",
            "3",
        ]);
        assert_exit(&out, 0);
    }
    assert_eq!(
        fs::read(ws.path("a.jsonl")).unwrap(),
        fs::read(ws.path("b.jsonl")).unwrap()
    );
}

#[test]
fn split_bad_ratios_exit_2() {
    let ws = Workspace::new(10);
    ws.ingest();
    let out = run(&[
        "split",
        "--input",
        &ws.arg("corpus.jsonl"),
        "--out",
        &ws.arg("split.jsonl"),
        "--ratios",
        "0.8,0.3,0.1",
    ]);
    assert_exit(&out, 2);
}

#[test]
fn train_lda_defaults_to_40_topics_and_topics_lists_top_n() {
    let ws = Workspace::new(24);
    ws.ingest();
    let out = run(&[
        "train-lda",
        "--input",
        &ws.arg("corpus.jsonl"),
        "--vocab",
        &ws.arg("vocab.txt"),
        "--out",
        &ws.arg("lda.json"),
        "--iterations",
        "20",
        "--seed",
        "1",
    ]);
    assert_exit(&out, 0);
    let model: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(ws.path("lda.json")).unwrap()).unwrap();
    assert_eq!(model["model"]["config"]["n_topics"], 40);

    let out = run(&[
        "topics",
        "--model",
        &ws.arg("lda.json"),
        "--vocab",
        &ws.arg("vocab.txt"),
        "--top-n",
        "10",
    ]);
    assert_exit(&out, 0);
    let text = String::from_utf8_lossy(&out.stdout);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 40);
    for line in &lines {
        let words = line.split_once(": ").unwrap().1.split(", ").count();
        assert_eq!(words, 10);
    }
}

#[test]
fn topics_unknown_model_path_exits_2() {
    let ws = Workspace::new(6);
    ws.ingest();
    let out = run(&[
        "topics",
        "--model",
        &ws.arg("missing.json"),
        "--vocab",
        &ws.arg("vocab.txt"),
    ]);
    assert_exit(&out, 2);
}

#[test]
fn infer_topics_emits_ranked_top_k() {
    let ws = Workspace::new(18);
    ws.ingest();
    let out = run(&[
        "train-lda",
        "--input",
        &ws.arg("corpus.jsonl"),
        "--vocab",
        &ws.arg("vocab.txt"),
        "--out",
        &ws.arg("lda.json"),
        "--topics",
        "5",
        "--iterations",
        "30",
        "--seed",
        "2",
    ]);
    assert_exit(&out, 0);
    let out = run(&[
        "infer-topics",
        "--model",
        &ws.arg("lda.json"),
        "--vocab",
        &ws.arg("vocab.txt"),
        "--input",
        &ws.arg("corpus.jsonl"),
        "--out",
        &ws.arg("topics.jsonl"),
        "--top-k",
        "3",
    ]);
    assert_exit(&out, 0);
    let text = fs::read_to_string(ws.path("topics.jsonl")).unwrap();
    assert_eq!(text.lines().count(), 18);
    for line in text.lines() {
        let record: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(record["topics"].as_array().unwrap().len(), 3);
        let probs: Vec<f64> = record["probabilities"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_f64().unwrap())
            .collect();
        assert!(probs.windows(2).all(|w| w[0] >= w[1]), "not ranked: {probs:?}");
    }
}

fn train_and_predict(ws: &Workspace) {
    let out = run(&[
        "train-clf",
        "--input",
        &ws.arg("corpus.jsonl"),
        "--vocab",
        &ws.arg("vocab.txt"),
        "--out",
        &ws.arg("clf.json"),
    ]);
    assert_exit(&out, 0);
    let out = run(&[
        "predict",
        "--input",
        &ws.arg("corpus.jsonl"),
        "--vocab",
        &ws.arg("vocab.txt"),
        "--model",
        &ws.arg("clf.json"),
        "--out",
        &ws.arg("scores.csv"),
        "--predictions",
        &ws.arg("pred.jsonl"),
    ]);
    assert_exit(&out, 0);
}

#[test]
fn predict_emits_scores_sets_and_rankings() {
    let ws = Workspace::new(24);
    ws.ingest();
    train_and_predict(&ws);
    let csv = fs::read_to_string(ws.path("scores.csv")).unwrap();
    assert!(csv.starts_with("doc_id,Fatigue,Confusion,Distraction\n"));
    assert_eq!(csv.lines().count(), 25);
    let pred = fs::read_to_string(ws.path("pred.jsonl")).unwrap();
    let first: serde_json::Value = serde_json::from_str(pred.lines().next().unwrap()).unwrap();
    // separable keywords: default 0.5 threshold recovers the labels
    assert_eq!(first["predicted"].as_array().unwrap().len(), 1);
    assert_eq!(first["predicted"][0], "Fatigue");
    assert_eq!(first["ranked"].as_array().unwrap().len(), 3);
}

#[test]
fn predict_external_scores_bypass_model() {
    let ws = Workspace::new(6);
    ws.ingest();
    let mut csv = String::from("doc_id,Fatigue,Confusion\n");
    for i in (0..6).rev() {
        // shuffled row order on purpose: alignment is by id
        csv.push_str(&format!("r{i},0.{i}1,0.2\n"));
    }
    fs::write(ws.path("external.csv"), csv).unwrap();
    let out = run(&[
        "predict",
        "--input",
        &ws.arg("corpus.jsonl"),
        "--scores",
        &ws.arg("external.csv"),
        "--out",
        &ws.arg("scores.csv"),
    ]);
    assert_exit(&out, 0);
    let written = fs::read_to_string(ws.path("scores.csv")).unwrap();
    let first_row = written.lines().nth(1).unwrap();
    assert!(first_row.starts_with("r0,0.01,"), "row: {first_row}");
}

#[test]
fn predict_without_model_or_scores_exits_2() {
    let ws = Workspace::new(6);
    ws.ingest();
    let out = run(&[
        "predict",
        "--input",
        &ws.arg("corpus.jsonl"),
        "--out",
        &ws.arg("scores.csv"),
    ]);
    assert_exit(&out, 2);
}

#[test]
fn model_from_other_vocabulary_is_refused() {
    let ws = Workspace::new(24);
    ws.ingest();
    train_and_predict(&ws);
    // rebuild the vocabulary with a different config: hash changes
    let out = run(&[
        "ingest",
        "--input",
        &ws.arg("raw.jsonl"),
        "--out",
        &ws.arg("corpus2.jsonl"),
        "--vocab",
        &ws.arg("vocab2.txt"),
        "--min-token-count",
        "2",
    ]);
    assert_exit(&out, 0);
    let out = run(&[
        "predict",
        "--input",
        &ws.arg("corpus2.jsonl"),
        "--vocab",
        &ws.arg("vocab2.txt"),
        "--model",
        &ws.arg("clf.json"),
        "--out",
        &ws.arg("scores2.csv"),
    ]);
    assert_exit(&out, 2);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("vocabulary"), "stderr: {stderr}");
}

#[test]
fn eval_emits_table_shaped_report() {
    let ws = Workspace::new(24);
    ws.ingest();
    train_and_predict(&ws);
    let out = run(&[
        "eval",
        "--input",
        &ws.arg("corpus.jsonl"),
        "--scores",
        &ws.arg("scores.csv"),
        "--out",
        &ws.arg("report.csv"),
        "--summaries",
    ]);
    assert_exit(&out, 0);
    let report = fs::read_to_string(ws.path("report.csv")).unwrap();
    let metrics: Vec<&str> = report
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(
        metrics,
        vec![
            "P@1",
            "P@2",
            "P@5",
            "R@1",
            "R@2",
            "R@5",
            "S@1",
            "S@2",
            "S@5",
            "EM",
            "R1.precision",
            "R1.recall",
            "R2.precision",
            "R2.recall",
            "RL.precision",
            "RL.recall"
        ]
    );
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("Metric"), "table printed to stdout");
}

#[test]
fn eval_without_predictions_exits_2() {
    let ws = Workspace::new(6);
    ws.ingest();
    let out = run(&[
        "eval",
        "--input",
        &ws.arg("corpus.jsonl"),
        "--out",
        &ws.arg("report.csv"),
    ]);
    assert_exit(&out, 2);
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let ws = Workspace::new(30);
    ws.ingest();
    fs::write(
        ws.path("run.toml"),
        "[split]\nratios = [0.5, 0.25, 0.25]\nseed = 11\n",
    )
    .unwrap();
    let out = run(&[
        "split",
        "--config",
        &ws.arg("run.toml"),
        "--input",
        &ws.arg("corpus.jsonl"),
        "--out",
        &ws.arg("from_config.jsonl"),
    ]);
    assert_exit(&out, 0);
    assert_eq!(split_counts(&ws.path("from_config.jsonl")), (15, 7, 8));

    // explicit flag beats the config file
    let out = run(&[
        "split",
        "--config",
        &ws.arg("run.toml"),
        "--input",
        &ws.arg("corpus.jsonl"),
        "--out",
        &ws.arg("from_flags.jsonl"),
        "--ratios",
        "0.9,0.0,0.1",
    ]);
    assert_exit(&out, 0);
    assert_eq!(split_counts(&ws.path("from_flags.jsonl")), (27, 0, 3));
}

#[test]
fn config_file_with_unknown_key_exits_2() {
    let ws = Workspace::new(4);
    fs::write(ws.path("bad.toml"), "no_such_key = 1\n").unwrap();
    let out = run(&[
        "split",
        "--config",
        &ws.arg("bad.toml"),
        "--input",
        &ws.arg("raw.jsonl"),
        "--out",
        &ws.arg("x.jsonl"),
    ]);
    assert_exit(&out, 2);
}
