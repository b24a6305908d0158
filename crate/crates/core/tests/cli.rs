use std::path::Path;
use std::process::Command;

use owtm::cli::{
    cmd_dump_clauses, cmd_score, cmd_synth, cmd_train, parse_listing, ModelArtifacts, RunConfig,
    ScoreTable, MODEL_FILE,
};
use owtm::novelty::MulticlassTm;
use owtm::synthetic::SyntheticSpec;
use owtm::tm::{AutomatonState, Polarity};

fn owtm() -> Command {
    Command::new(env!("CARGO_BIN_EXE_owtm"))
}

fn small_corpus(root: &Path) {
    let spec = SyntheticSpec {
        topics: 3,
        words_per_topic: 20,
        docs_per_topic: 40,
        words_per_doc: 10,
        overlap: 0.0,
        seed: 7,
    };
    cmd_synth(&spec, root).unwrap();
}

fn small_config(root: &Path) -> RunConfig {
    RunConfig {
        known: Some(root.join("known")),
        novel: Some(root.join("novel")),
        clauses: 20,
        epochs: 5,
        states: 50,
        vote_target: 5,
        sensitivity: 4.0,
        min_df: 1,
        ..RunConfig::default()
    }
}

#[test]
fn train_round_trips_bit_exact() {
    let dir = tempfile::tempdir().unwrap();
    small_corpus(dir.path());
    let model_dir = dir.path().join("model");
    let art = cmd_train(&small_config(dir.path()), &model_dir, &mut Vec::new()).unwrap();
    assert_eq!(art.mtm.labels(), ["topica", "topicb"]);

    let bytes = std::fs::read(model_dir.join(MODEL_FILE)).unwrap();
    let back = MulticlassTm::from_bytes(&bytes).unwrap();
    assert_eq!(back, art.mtm);
    assert_eq!(back.to_bytes(), bytes);

    let loaded = ModelArtifacts::load(&model_dir).unwrap();
    assert_eq!(loaded.vocab, art.vocab);
    assert_eq!(loaded.stats, art.stats);
    assert_eq!(loaded.config, art.config);
}

#[test]
fn zero_epochs_persists_initial_states() {
    let dir = tempfile::tempdir().unwrap();
    small_corpus(dir.path());
    let cfg = RunConfig {
        epochs: 0,
        ..small_config(dir.path())
    };
    let model_dir = dir.path().join("model");
    cmd_train(&cfg, &model_dir, &mut Vec::new()).unwrap();
    let art = ModelArtifacts::load(&model_dir).unwrap();
    let initial = AutomatonState::boundary(cfg.states);
    for m in art.mtm.machines() {
        for c in m.clauses() {
            assert!(c.automata().iter().all(|a| *a == initial));
        }
    }
    // Nothing is included yet, so the listing is empty.
    let mut out = Vec::new();
    assert!(cmd_dump_clauses(&art, 10, &mut out).unwrap().is_empty());
    let text = String::from_utf8(out).unwrap();
    assert!(parse_listing(&text).unwrap().is_empty());
}

#[test]
fn unreadable_path_exits_with_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let status = owtm()
        .args(["train", "--known"])
        .arg(dir.path().join("missing"))
        .arg("--model-dir")
        .arg(dir.path().join("m"))
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(2));
    assert!(!status.stderr.is_empty());
}

#[test]
fn empty_corpus_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty");
    std::fs::create_dir(&empty).unwrap();
    let out = owtm()
        .args(["train", "--known"])
        .arg(&empty)
        .arg("--model-dir")
        .arg(dir.path().join("m"))
        .output()
        .unwrap();
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn bad_flags_are_config_errors() {
    let dir = tempfile::tempdir().unwrap();
    small_corpus(dir.path());
    for extra in [&["--clauses", "7"][..], &["--s", "1.0"], &["--bogus"]] {
        let out = owtm()
            .args(["train", "--known"])
            .arg(dir.path().join("known"))
            .arg("--model-dir")
            .arg(dir.path().join("m"))
            .args(extra)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(3), "{extra:?}");
    }
}

#[test]
fn score_is_deterministic_and_named_by_class() {
    let dir = tempfile::tempdir().unwrap();
    small_corpus(dir.path());
    let cfg = small_config(dir.path());
    let model_dir = dir.path().join("model");
    cmd_train(&cfg, &model_dir, &mut Vec::new()).unwrap();

    let balanced = RunConfig {
        balanced: true,
        ..cfg.clone()
    };
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let table = cmd_score(&balanced, &model_dir, &a).unwrap();
    cmd_score(&balanced, &model_dir, &b).unwrap();
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let known = table.records.iter().filter(|r| table.is_known(r)).count();
    assert_eq!(known, table.records.len() - known);

    let text = std::fs::read_to_string(&a).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# owtm "));
    assert_eq!(
        lines.next().unwrap(),
        "doc_id,source_label,pos_topica,neg_topica,pos_topicb,neg_topicb,\
         npos_topica,nneg_topica,npos_topicb,nneg_topicb"
    );
    let loaded = ScoreTable::load(&a).unwrap();
    assert_eq!(loaded.records.len(), table.records.len());
    // Two known classes give four raw score columns.
    assert!(loaded.records.iter().all(|r| r.row.columns().len() == 4));
}

#[test]
fn novel_label_colliding_with_known_class_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    small_corpus(dir.path());
    let cfg = small_config(dir.path());
    let model_dir = dir.path().join("model");
    cmd_train(&cfg, &model_dir, &mut Vec::new()).unwrap();
    let clash = RunConfig {
        novel: Some(dir.path().join("known")),
        ..cfg
    };
    let err = cmd_score(&clash, &model_dir, &dir.path().join("s.csv")).unwrap_err();
    assert_eq!(err.exit_code(), 3);
}

#[test]
fn vocabulary_model_mismatch_is_detected() {
    let dir = tempfile::tempdir().unwrap();
    small_corpus(dir.path());
    let cfg = small_config(dir.path());
    let model_dir = dir.path().join("model");
    cmd_train(&cfg, &model_dir, &mut Vec::new()).unwrap();
    std::fs::write(model_dir.join("vocab.txt"), "alpha\nbeta\n").unwrap();
    assert!(ModelArtifacts::load(&model_dir).is_err());
}

#[test]
fn full_command_line_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path();
    let run = |args: &[&str]| {
        let out = owtm().args(args).current_dir(root).output().unwrap();
        assert!(
            out.status.success(),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        String::from_utf8(out.stdout).unwrap()
    };
    run(&[
        "synth",
        "--out",
        "c",
        "--docs-per-topic",
        "40",
        "--words-per-topic",
        "20",
        "--words-per-doc",
        "10",
    ]);
    let common = [
        "--clauses",
        "20",
        "--epochs",
        "10",
        "--vote-target",
        "5",
        "--s",
        "4",
        "--min-df",
        "1",
    ];
    let mut train = vec!["train", "--known", "c/known", "--model-dir", "m"];
    train.extend(common);
    let printed = run(&train);
    assert!(printed.contains("class topica: 20 clauses"), "{printed}");
    run(&[
        "score",
        "--model-dir",
        "m",
        "--known",
        "c/known",
        "--novel",
        "c/novel",
        "--out",
        "s.csv",
    ]);
    run(&[
        "fit-meta", "--scores", "s.csv", "--meta", "knn", "--k", "3", "--out", "knn.json",
    ]);

    let known_text = (0..10)
        .map(|i| format!("topicaw{i:03}"))
        .collect::<Vec<_>>()
        .join(" ");
    let v = run(&[
        "detect",
        "--model-dir",
        "m",
        "--meta-model",
        "knn.json",
        "--text",
        &known_text,
    ]);
    assert!(v.starts_with("KNOWN topica\t"), "{v}");
    let v = run(&[
        "detect",
        "--model-dir",
        "m",
        "--rule-threshold",
        "0",
        "--text",
        "nothing familiar here",
    ]);
    assert!(v.starts_with("NOVEL\t"), "{v}");

    let listing = run(&["dump-clauses", "--model-dir", "m", "--top-k", "3"]);
    let parsed = parse_listing(&listing).unwrap();
    assert!(!parsed.is_empty());
    assert!(parsed.iter().any(|c| c.polarity == Polarity::Negative));

    let mut eval = vec![
        "eval", "--known", "c/known", "--novel", "c/novel", "--report", "r.json", "--k", "3",
    ];
    eval.extend(common);
    let printed = run(&eval);
    assert!(printed.contains("meta knn"), "{printed}");
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(root.join("r.json")).unwrap()).unwrap();
    assert!(report["header"].as_str().unwrap().starts_with("owtm "));
    assert_eq!(report["rule_sweep"].as_array().unwrap().len(), 11);
}

#[test]
fn help_and_version_succeed() {
    for flag in ["--help", "--version"] {
        let out = owtm().arg(flag).output().unwrap();
        assert_eq!(out.status.code(), Some(0), "{flag}");
    }
}
