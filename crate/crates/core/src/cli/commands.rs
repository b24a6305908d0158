use std::collections::HashSet;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cli::config::{require_path, MetaChoice, RunConfig};
use crate::cli::listing::{format_clause, list_clauses, ListedClause};
use crate::cli::table::{ScoreRecord, ScoreTable};
use crate::error::{Error, Result};
use crate::meta::{
    accuracy, balanced_accuracy, fit_meta, stratified_split, MetaDataset, MetaModel,
};
use crate::novelty::{
    attribute_class, normalize_scores, MinMaxStats, MulticlassTm, NoveltyFeatureRow,
    RuleClassifier, Verdict,
};
use crate::synthetic::{generate, SyntheticSpec};
use crate::text::{binarize, build_vocabulary, load_corpus, Document, Vocabulary};

pub const MODEL_FILE: &str = "model.owtm";
pub const VOCAB_FILE: &str = "vocab.txt";
pub const CONFIG_FILE: &str = "config.json";
pub const STATS_FILE: &str = "stats.json";

fn out_err(e: std::io::Error) -> Error {
    Error::io("<stdout>", e)
}

/// Trained model directory contents.
#[derive(Clone, Debug)]
pub struct ModelArtifacts {
    pub mtm: MulticlassTm,
    pub vocab: Vocabulary,
    pub config: RunConfig,
    /// Normalization statistics frozen from the training documents' scores.
    pub stats: MinMaxStats<f64>,
}

#[derive(Serialize, Deserialize)]
struct ConfigFile {
    header: String,
    labels: Vec<String>,
    config: RunConfig,
}

#[derive(Serialize, Deserialize)]
struct StatsFile {
    header: String,
    stats: MinMaxStats<f64>,
}

#[derive(Serialize, Deserialize)]
struct MetaFile {
    header: String,
    classes: Vec<String>,
    model: MetaModel<f64>,
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let f = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    serde_json::to_writer_pretty(std::io::BufWriter::new(f), value)?;
    Ok(())
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let f = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    Ok(serde_json::from_reader(std::io::BufReader::new(f))?)
}

impl ModelArtifacts {
    pub fn save(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let header = self.config.header();
        let model_path = dir.join(MODEL_FILE);
        std::fs::write(&model_path, self.mtm.to_bytes()).map_err(|e| Error::io(&model_path, e))?;
        self.vocab.save(&dir.join(VOCAB_FILE), Some(&header))?;
        write_json(
            &dir.join(CONFIG_FILE),
            &ConfigFile {
                header: header.clone(),
                labels: self.mtm.labels().to_vec(),
                config: self.config.clone(),
            },
        )?;
        write_json(
            &dir.join(STATS_FILE),
            &StatsFile {
                header,
                stats: self.stats.clone(),
            },
        )
    }

    pub fn load(dir: &Path) -> Result<Self> {
        let model_path = dir.join(MODEL_FILE);
        let bytes = std::fs::read(&model_path).map_err(|e| Error::io(&model_path, e))?;
        let mtm = MulticlassTm::from_bytes(&bytes)?;
        let vocab = Vocabulary::load(&dir.join(VOCAB_FILE))?;
        if vocab.len() != mtm.vocab_size() {
            return Err(Error::Format(format!(
                "vocabulary has {} terms but the model expects {}",
                vocab.len(),
                mtm.vocab_size()
            )));
        }
        let cfg: ConfigFile = read_json(&dir.join(CONFIG_FILE))?;
        let stats: StatsFile = read_json(&dir.join(STATS_FILE))?;
        if stats.stats.width() != 2 * mtm.labels().len() {
            return Err(Error::Format(
                "normalization stats do not match the model".into(),
            ));
        }
        Ok(ModelArtifacts {
            mtm,
            vocab,
            config: cfg.config,
            stats: stats.stats,
        })
    }

    pub fn score(&self, text: &str) -> Result<NoveltyFeatureRow> {
        self.mtm.novelty_features(&binarize(text, &self.vocab))
    }

    fn record(&self, doc: &Document) -> Result<ScoreRecord> {
        let row = self.score(&doc.text)?;
        let normalized = self.stats.transform_row(&row.columns_as::<f64>())?;
        Ok(ScoreRecord {
            doc_id: doc.id.clone(),
            source_label: doc.label.clone(),
            row,
            normalized,
        })
    }
}

/// Builds the vocabulary from `docs`, trains one machine per label and
/// freezes normalization statistics on the training scores.
pub fn train_models(config: &RunConfig, docs: &[&Document]) -> Result<ModelArtifacts> {
    config.validate()?;
    if docs.is_empty() {
        return Err(Error::Empty("no training documents".into()));
    }
    let mut labels: Vec<String> = docs.iter().map(|d| d.label.clone()).collect();
    labels.sort();
    labels.dedup();
    if labels.len() < 2 {
        log::warn!("only one known class; one-vs-rest training has no negative examples");
    }
    let texts: Vec<&str> = docs.iter().map(|d| d.text.as_str()).collect();
    let vocab = build_vocabulary(&texts, config.max_features, config.min_df)?;
    let examples: Vec<_> = docs
        .iter()
        .map(|d| {
            let c = labels
                .binary_search(&d.label)
                .expect("label collected above");
            (binarize(&d.text, &vocab), c)
        })
        .collect();
    let mtm =
        MulticlassTm::fit_one_vs_rest(labels, vocab.len(), &examples, &config.train_params())?;
    let rows = examples
        .iter()
        .map(|(x, _)| mtm.novelty_features(x))
        .collect::<Result<Vec<_>>>()?;
    let stats = MinMaxStats::fit_scores(&rows)?;
    Ok(ModelArtifacts {
        mtm,
        vocab,
        config: config.clone(),
        stats,
    })
}

pub fn cmd_train(
    config: &RunConfig,
    model_dir: &Path,
    out: &mut dyn Write,
) -> Result<ModelArtifacts> {
    config.validate()?;
    let corpus = load_corpus(require_path(&config.known, "--known")?)?;
    let start = Instant::now();
    let docs: Vec<&Document> = corpus.documents.iter().collect();
    let art = train_models(config, &docs)?;
    let elapsed = start.elapsed();
    art.save(model_dir)?;
    for (label, m) in art.mtm.labels().iter().zip(art.mtm.machines()) {
        let active = |cs: &[crate::tm::Clause]| cs.iter().filter(|c| !c.is_empty()).count();
        writeln!(
            out,
            "class {label}: {} clauses ({} positive, {} negative non-empty)",
            m.num_clauses(),
            active(m.positive_clauses()),
            active(m.negative_clauses())
        )
        .map_err(out_err)?;
    }
    writeln!(
        out,
        "trained {} machines over {} terms on {} documents in {:.2}s",
        art.mtm.labels().len(),
        art.vocab.len(),
        docs.len(),
        elapsed.as_secs_f64()
    )
    .map_err(out_err)?;
    Ok(art)
}

/// Keeps `n` seeded-random elements of `items`, preserving their order.
fn sample_keep_order<T: Clone>(items: &[T], n: usize, rng: &mut ChaCha8Rng) -> Vec<T> {
    if n >= items.len() {
        return items.to_vec();
    }
    let mut idx: Vec<usize> = (0..items.len()).collect();
    idx.shuffle(rng);
    idx.truncate(n);
    idx.sort_unstable();
    idx.into_iter().map(|i| items[i].clone()).collect()
}

fn balance<'a>(
    known: Vec<&'a Document>,
    novel: Vec<&'a Document>,
    seed: u64,
) -> (Vec<&'a Document>, Vec<&'a Document>) {
    let n = known.len().min(novel.len());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = sample_keep_order(&known, n, &mut rng);
    let v = sample_keep_order(&novel, n, &mut rng);
    (k, v)
}

fn check_novel_labels(classes: &[String], novel: &[&Document]) -> Result<()> {
    if let Some(d) = novel.iter().find(|d| classes.contains(&d.label)) {
        return Err(Error::param(format!(
            "novel document {} carries known class label `{}`",
            d.id, d.label
        )));
    }
    Ok(())
}

pub fn cmd_score(config: &RunConfig, model_dir: &Path, out_path: &Path) -> Result<ScoreTable> {
    config.validate()?;
    let art = ModelArtifacts::load(model_dir)?;
    if config.known.is_none() && config.novel.is_none() {
        return Err(Error::param("--known and/or --novel is required"));
    }
    let known = match &config.known {
        Some(_) => load_corpus(require_path(&config.known, "--known")?)?,
        None => Default::default(),
    };
    let novel = match &config.novel {
        Some(_) => load_corpus(require_path(&config.novel, "--novel")?)?,
        None => Default::default(),
    };
    let classes = art.mtm.labels().to_vec();
    let known_docs: Vec<&Document> = known.documents.iter().collect();
    let novel_docs: Vec<&Document> = novel.documents.iter().collect();
    check_novel_labels(&classes, &novel_docs)?;
    if let Some(d) = known_docs.iter().find(|d| !classes.contains(&d.label)) {
        return Err(Error::UnknownClass(d.label.clone()));
    }
    let (known_docs, novel_docs) = if config.balanced {
        balance(known_docs, novel_docs, config.seed)
    } else {
        (known_docs, novel_docs)
    };
    let records = known_docs
        .iter()
        .chain(&novel_docs)
        .map(|d| art.record(d))
        .collect::<Result<Vec<_>>>()?;
    let table = ScoreTable { classes, records };
    table.save(out_path, &config.header())?;
    Ok(table)
}

pub fn cmd_fit_meta(
    config: &RunConfig,
    choice: MetaChoice,
    scores: &Path,
    out_path: &Path,
) -> Result<MetaModel<f64>> {
    config.validate()?;
    let kind = config
        .meta_kind(choice)
        .ok_or_else(|| Error::param("fit-meta needs --meta knn or --meta logistic"))?;
    let table = ScoreTable::load(scores)?;
    let rows: Vec<Vec<f64>> = table.records.iter().map(|r| r.normalized.clone()).collect();
    let labels: Vec<bool> = table.records.iter().map(|r| table.is_known(r)).collect();
    let ds = if config.balanced {
        MetaDataset::new_balanced(rows, labels)?
    } else {
        MetaDataset::new(rows, labels)?
    };
    let model = fit_meta(kind, &ds)?;
    write_json(
        out_path,
        &MetaFile {
            header: config.header(),
            classes: table.classes.clone(),
            model: model.clone(),
        },
    )?;
    Ok(model)
}

/// How `detect` decides novelty.
pub enum Decider {
    Rule(RuleClassifier),
    Meta(MetaModel<f64>),
}

impl Decider {
    pub fn from_config(
        config: &RunConfig,
        art: &ModelArtifacts,
        meta_model: Option<&Path>,
    ) -> Result<Self> {
        let choice = config.meta.unwrap_or(if meta_model.is_some() {
            MetaChoice::Knn
        } else {
            MetaChoice::Rule
        });
        match choice {
            MetaChoice::Rule => {
                let t = config.rule_threshold.ok_or_else(|| {
                    Error::param("--rule-threshold is required for the rule classifier")
                })?;
                Ok(Decider::Rule(RuleClassifier::new(
                    t,
                    art.mtm.max_clauses(),
                )?))
            }
            MetaChoice::Knn | MetaChoice::Logistic => {
                let path = meta_model
                    .ok_or_else(|| Error::param("--meta-model is required for knn/logistic"))?;
                let file: MetaFile = read_json(path)?;
                if file.classes != art.mtm.labels() {
                    return Err(Error::Format(
                        "meta model was trained on a different class set".into(),
                    ));
                }
                Ok(Decider::Meta(file.model))
            }
        }
    }

    pub fn verdict(&self, art: &ModelArtifacts, row: &NoveltyFeatureRow) -> Result<Verdict> {
        let known = match self {
            Decider::Rule(rc) => rc.is_known(row),
            Decider::Meta(m) => m.predict(&art.stats.transform_row(&row.columns_as::<f64>())?)?,
        };
        Ok(if known {
            Verdict::Known(attribute_class(row).to_string())
        } else {
            Verdict::Novel
        })
    }
}

pub fn format_row(row: &NoveltyFeatureRow) -> String {
    row.scores
        .iter()
        .map(|s| {
            format!(
                "pos_{}={} neg_{}={}",
                s.label, s.pos_sum, s.label, s.neg_sum
            )
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Prints one `<verdict>\t<scores>[\t<id>]` line per input.
pub fn cmd_detect(
    art: &ModelArtifacts,
    decider: &Decider,
    inputs: &[(Option<String>, String)],
    out: &mut dyn Write,
) -> Result<Vec<Verdict>> {
    let mut verdicts = Vec::with_capacity(inputs.len());
    for (id, text) in inputs {
        let row = art.score(text)?;
        let v = decider.verdict(art, &row)?;
        match id {
            Some(id) => writeln!(out, "{v}\t{}\t{id}", format_row(&row)),
            None => writeln!(out, "{v}\t{}", format_row(&row)),
        }
        .map_err(out_err)?;
        verdicts.push(v);
    }
    Ok(verdicts)
}

pub fn cmd_dump_clauses(
    art: &ModelArtifacts,
    top_k: usize,
    out: &mut dyn Write,
) -> Result<Vec<ListedClause>> {
    let listed = list_clauses(&art.mtm, &art.vocab, top_k)?;
    writeln!(out, "# {}", art.config.header()).map_err(out_err)?;
    for c in &listed {
        writeln!(out, "{}", format_clause(&c.class, c.polarity, &c.literals)).map_err(out_err)?;
    }
    Ok(listed)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassMeans {
    pub class: String,
    pub pos_own: f64,
    pub pos_other: f64,
    pub pos_novel: f64,
    pub neg_own: f64,
    pub neg_other: f64,
    pub neg_novel: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetaResult {
    pub kind: String,
    pub test_accuracy: f64,
    pub test_balanced_accuracy: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RulePoint {
    pub threshold: usize,
    /// Over every scored document.
    pub accuracy: f64,
    pub balanced_accuracy: f64,
    /// Over the meta-classifier test split.
    pub test_accuracy: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub header: String,
    pub config: RunConfig,
    pub classes: Vec<String>,
    pub vocab_size: usize,
    pub train_documents: usize,
    pub known_scored: usize,
    pub novel_scored: usize,
    pub training_seconds: f64,
    pub mean_total_known: f64,
    pub mean_total_novel: f64,
    pub class_means: Vec<ClassMeans>,
    pub meta: Vec<MetaResult>,
    pub rule_sweep: Vec<RulePoint>,
}

impl EvalReport {
    /// Sweep point with the highest balanced accuracy over all scored
    /// documents (lowest threshold on ties).
    pub fn best_rule(&self) -> Option<&RulePoint> {
        self.rule_sweep
            .iter()
            .fold(None, |best: Option<&RulePoint>, p| match best {
                Some(b) if b.balanced_accuracy >= p.balanced_accuracy => Some(b),
                _ => Some(p),
            })
    }

    /// Highest rule accuracy on the meta test split.
    pub fn best_rule_test_accuracy(&self) -> f64 {
        self.rule_sweep
            .iter()
            .map(|p| p.test_accuracy)
            .fold(0.0, f64::max)
    }

    pub fn meta_accuracy(&self, kind: &str) -> Option<f64> {
        self.meta
            .iter()
            .find(|m| m.kind == kind)
            .map(|m| m.test_accuracy)
    }
}

fn mean(values: impl Iterator<Item = usize>) -> f64 {
    let (sum, n) = values.fold((0usize, 0usize), |(s, n), v| (s + v, n + 1));
    if n == 0 {
        0.0
    } else {
        sum as f64 / n as f64
    }
}

/// Held-out split of the known documents, per class.
fn holdout_split<'a>(
    docs: &[&'a Document],
    fraction: f64,
    seed: u64,
) -> (Vec<&'a Document>, Vec<&'a Document>) {
    let mut labels: Vec<&str> = docs.iter().map(|d| d.label.as_str()).collect();
    labels.sort_unstable();
    labels.dedup();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut held: HashSet<usize> = HashSet::new();
    for label in labels {
        let mut idx: Vec<usize> = (0..docs.len())
            .filter(|&i| docs[i].label == label)
            .collect();
        idx.shuffle(&mut rng);
        let n = ((idx.len() as f64) * fraction).round() as usize;
        held.extend(idx.into_iter().take(n));
    }
    let mut train = Vec::new();
    let mut test = Vec::new();
    for (i, d) in docs.iter().enumerate() {
        if held.contains(&i) {
            test.push(*d);
        } else {
            train.push(*d);
        }
    }
    (train, test)
}

/// Train on part of the known classes, score held-out known and novel
/// documents, then compare meta-classifiers with the threshold rule.
pub fn cmd_eval(
    config: &RunConfig,
    model_dir: Option<&Path>,
    report_path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<EvalReport> {
    config.validate()?;
    let known = load_corpus(require_path(&config.known, "--known")?)?;
    let novel = load_corpus(require_path(&config.novel, "--novel")?)?;
    let known_docs: Vec<&Document> = known.documents.iter().collect();
    let (train_docs, held_known) = holdout_split(&known_docs, config.holdout, config.seed);

    let start = Instant::now();
    let art = train_models(config, &train_docs)?;
    let training_seconds = start.elapsed().as_secs_f64();
    if let Some(dir) = model_dir {
        art.save(dir)?;
    }
    let classes = art.mtm.labels().to_vec();
    let novel_docs: Vec<&Document> = novel.documents.iter().collect();
    check_novel_labels(&classes, &novel_docs)?;
    let held_known: Vec<&Document> = held_known
        .into_iter()
        .filter(|d| classes.contains(&d.label))
        .collect();
    let (held_known, novel_docs) = if config.balanced {
        balance(held_known, novel_docs, config.seed)
    } else {
        (held_known, novel_docs)
    };
    if held_known.is_empty() || novel_docs.is_empty() {
        return Err(Error::Empty(
            "evaluation needs held-out known and novel documents".into(),
        ));
    }

    let known_rows = held_known
        .iter()
        .map(|d| art.score(&d.text))
        .collect::<Result<Vec<_>>>()?;
    let novel_rows = novel_docs
        .iter()
        .map(|d| art.score(&d.text))
        .collect::<Result<Vec<_>>>()?;

    let class_means = classes
        .iter()
        .enumerate()
        .map(|(c, label)| {
            let own = || {
                known_rows
                    .iter()
                    .zip(&held_known)
                    .filter(move |(_, d)| &d.label == label)
                    .map(move |(r, _)| &r.scores[c])
            };
            let other = || {
                known_rows
                    .iter()
                    .zip(&held_known)
                    .filter(move |(_, d)| &d.label != label)
                    .map(move |(r, _)| &r.scores[c])
            };
            let nov = || novel_rows.iter().map(move |r| &r.scores[c]);
            ClassMeans {
                class: label.clone(),
                pos_own: mean(own().map(|s| s.pos_sum)),
                pos_other: mean(other().map(|s| s.pos_sum)),
                pos_novel: mean(nov().map(|s| s.pos_sum)),
                neg_own: mean(own().map(|s| s.neg_sum)),
                neg_other: mean(other().map(|s| s.neg_sum)),
                neg_novel: mean(nov().map(|s| s.neg_sum)),
            }
        })
        .collect::<Vec<_>>();

    let all_rows: Vec<&NoveltyFeatureRow> = known_rows.iter().chain(&novel_rows).collect();
    let truth: Vec<bool> = known_rows
        .iter()
        .map(|_| true)
        .chain(novel_rows.iter().map(|_| false))
        .collect();
    let (train_idx, test_idx) = stratified_split(&truth, config.meta_train_fraction, config.seed);
    if train_idx.is_empty() || test_idx.is_empty() {
        return Err(Error::Empty("meta split left an empty part".into()));
    }
    let owned: Vec<NoveltyFeatureRow> = all_rows.iter().map(|r| (*r).clone()).collect();
    let train_rows: Vec<NoveltyFeatureRow> = train_idx.iter().map(|&i| owned[i].clone()).collect();
    let test_rows: Vec<NoveltyFeatureRow> = test_idx.iter().map(|&i| owned[i].clone()).collect();
    let stats = MinMaxStats::<f64>::fit_scores(&train_rows)?;
    let train_ds = MetaDataset::new(
        normalize_scores(&train_rows, &stats)?,
        train_idx.iter().map(|&i| truth[i]).collect(),
    )?;
    let test_truth: Vec<bool> = test_idx.iter().map(|&i| truth[i]).collect();
    let test_x = normalize_scores(&test_rows, &stats)?;

    let choices: Vec<MetaChoice> = match config.meta {
        Some(c) => vec![c],
        None => vec![MetaChoice::Knn, MetaChoice::Logistic, MetaChoice::Rule],
    };
    let mut meta = Vec::new();
    for choice in &choices {
        let Some(kind) = config.meta_kind(*choice) else {
            continue;
        };
        let model = fit_meta(kind, &train_ds)?;
        let preds = model.predict_all(&test_x)?;
        meta.push(MetaResult {
            kind: kind.name().to_string(),
            test_accuracy: accuracy(&preds, &test_truth)?,
            test_balanced_accuracy: balanced_accuracy(&preds, &test_truth)?,
        });
    }

    let mut rule_sweep = Vec::new();
    if choices.contains(&MetaChoice::Rule) {
        let half = art.mtm.max_clauses() / 2;
        let step = (art.mtm.max_clauses() / 100).max(1);
        for threshold in (0..=half).step_by(step) {
            let rc = RuleClassifier { threshold };
            let preds: Vec<bool> = all_rows.iter().map(|r| rc.is_known(r)).collect();
            let test_preds: Vec<bool> = test_idx.iter().map(|&i| preds[i]).collect();
            rule_sweep.push(RulePoint {
                threshold,
                accuracy: accuracy(&preds, &truth)?,
                balanced_accuracy: balanced_accuracy(&preds, &truth)?,
                test_accuracy: accuracy(&test_preds, &test_truth)?,
            });
        }
    }

    let report = EvalReport {
        header: config.header(),
        config: config.clone(),
        classes,
        vocab_size: art.vocab.len(),
        train_documents: train_docs.len(),
        known_scored: known_rows.len(),
        novel_scored: novel_rows.len(),
        training_seconds,
        mean_total_known: mean(known_rows.iter().map(NoveltyFeatureRow::total)),
        mean_total_novel: mean(novel_rows.iter().map(NoveltyFeatureRow::total)),
        class_means,
        meta,
        rule_sweep,
    };
    print_report(&report, out).map_err(out_err)?;
    if let Some(p) = report_path {
        write_json(p, &report)?;
    }
    Ok(report)
}

fn print_report(r: &EvalReport, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(
        out,
        "trained on {} documents ({} terms) in {:.2}s; scored {} known, {} novel",
        r.train_documents, r.vocab_size, r.training_seconds, r.known_scored, r.novel_scored
    )?;
    writeln!(
        out,
        "mean clause matches: known {:.2}, novel {:.2}",
        r.mean_total_known, r.mean_total_novel
    )?;
    for c in &r.class_means {
        writeln!(
            out,
            "class {}: pos own {:.2} other {:.2} novel {:.2} | neg own {:.2} other {:.2} novel {:.2}",
            c.class, c.pos_own, c.pos_other, c.pos_novel, c.neg_own, c.neg_other, c.neg_novel
        )?;
    }
    for m in &r.meta {
        writeln!(
            out,
            "meta {}: test accuracy {:.4} (balanced {:.4})",
            m.kind, m.test_accuracy, m.test_balanced_accuracy
        )?;
    }
    if let Some(b) = r.best_rule() {
        writeln!(
            out,
            "rule: best threshold {} balanced accuracy {:.4}; best test accuracy {:.4}",
            b.threshold,
            b.balanced_accuracy,
            r.best_rule_test_accuracy()
        )?;
    }
    Ok(())
}

/// Writes a synthetic corpus as `out/known/<topic>/…` for all but the last
/// topic and `out/novel/<topic>/…` for the last one.
pub fn cmd_synth(spec: &SyntheticSpec, out_dir: &Path) -> Result<()> {
    let syn = generate(spec)?;
    let (novel, known) = syn.labels.split_last().expect("at least one topic");
    let known: Vec<&str> = known.iter().map(String::as_str).collect();
    syn.write_dir(&out_dir.join("known"), &known)?;
    syn.write_dir(&out_dir.join("novel"), &[novel.as_str()])?;
    Ok(())
}
