//! The `owtm` command line: train, score, fit-meta, detect, dump-clauses,
//! eval and synth.
//!
//! Every command writes files through the functions in [`commands`], which
//! the tests call directly; [`run`] only maps parsed arguments onto a
//! [`RunConfig`].

mod commands;
mod config;
mod listing;
mod table;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::{
    cmd_detect, cmd_dump_clauses, cmd_eval, cmd_fit_meta, cmd_score, cmd_synth, cmd_train,
    format_row, train_models, ClassMeans, Decider, EvalReport, MetaResult, ModelArtifacts,
    RulePoint, CONFIG_FILE, MODEL_FILE, STATS_FILE, VOCAB_FILE,
};
pub use config::{MetaChoice, RunConfig, VERSION};
pub use listing::{format_clause, list_clauses, parse_clause_line, parse_listing, ListedClause};
pub use table::{ScoreRecord, ScoreTable};

use crate::error::{Error, Result};
use crate::synthetic::SyntheticSpec;
use crate::text::load_corpus;
use crate::tm::NegatedLiterals;

#[derive(Parser, Debug)]
#[command(
    name = "owtm",
    version,
    about = "Open-world text classification with Tsetlin machines"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Train one machine per known class and save the model directory.
    Train {
        #[command(flatten)]
        opts: Opts,
        #[arg(long)]
        model_dir: PathBuf,
    },
    /// Score known and novel documents into a CSV table.
    Score {
        #[command(flatten)]
        opts: Opts,
        #[arg(long)]
        model_dir: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Fit a KNN or logistic meta-classifier on a score table.
    FitMeta {
        #[command(flatten)]
        opts: Opts,
        #[arg(long)]
        scores: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print NOVEL or KNOWN <class> for a text or each line of a file.
    Detect {
        #[command(flatten)]
        opts: Opts,
        #[arg(long)]
        model_dir: PathBuf,
        #[arg(long)]
        meta_model: Option<PathBuf>,
        #[arg(long, conflicts_with = "file", required_unless_present = "file")]
        text: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// List the learned clauses of every class.
    DumpClauses {
        #[arg(long)]
        model_dir: PathBuf,
        #[arg(long, default_value_t = 10)]
        top_k: usize,
    },
    /// Train, score and compare novelty classifiers end to end.
    Eval {
        #[command(flatten)]
        opts: Opts,
        #[arg(long)]
        model_dir: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Write a synthetic topic corpus with `known/` and `novel/` parts.
    Synth {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 3)]
        topics: usize,
        #[arg(long, default_value_t = 50)]
        words_per_topic: usize,
        #[arg(long, default_value_t = 200)]
        docs_per_topic: usize,
        #[arg(long, default_value_t = 20)]
        words_per_doc: usize,
        #[arg(long, default_value_t = 0.0)]
        overlap: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn parse_negated(s: &str) -> std::result::Result<NegatedLiterals, String> {
    match s {
        "standard" => Ok(NegatedLiterals::Standard),
        "type-ii-only" => Ok(NegatedLiterals::TypeIiOnly),
        _ => Err(format!("expected `standard` or `type-ii-only`, got `{s}`")),
    }
}

fn parse_meta(s: &str) -> std::result::Result<MetaChoice, String> {
    match s {
        "knn" => Ok(MetaChoice::Knn),
        "logistic" => Ok(MetaChoice::Logistic),
        "rule" => Ok(MetaChoice::Rule),
        _ => Err(format!("expected knn, logistic or rule, got `{s}`")),
    }
}

/// Options shared by the pipeline commands. Unset values take the
/// [`RunConfig`] defaults.
#[derive(Args, Debug, Default, Clone)]
pub struct Opts {
    #[arg(long)]
    pub known: Option<PathBuf>,
    #[arg(long)]
    pub novel: Option<PathBuf>,
    #[arg(long)]
    pub clauses: Option<usize>,
    #[arg(long)]
    pub vote_target: Option<u32>,
    #[arg(long = "s")]
    pub sensitivity: Option<f64>,
    #[arg(long)]
    pub epochs: Option<usize>,
    #[arg(long)]
    pub states: Option<u16>,
    #[arg(long, value_parser = parse_negated)]
    pub negated_literals: Option<NegatedLiterals>,
    #[arg(long)]
    pub max_features: Option<usize>,
    #[arg(long)]
    pub min_df: Option<usize>,
    #[arg(long)]
    pub rule_threshold: Option<usize>,
    #[arg(long, value_parser = parse_meta)]
    pub meta: Option<MetaChoice>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub learning_rate: Option<f64>,
    #[arg(long)]
    pub iterations: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub balanced: bool,
    #[arg(long)]
    pub holdout: Option<f64>,
}

impl Opts {
    /// Overlays the flags that were given onto `base`.
    pub fn apply(&self, base: &RunConfig) -> RunConfig {
        let mut c = base.clone();
        macro_rules! set {
            ($($field:ident),*) => {$(
                if let Some(v) = self.$field.clone() { c.$field = v; }
            )*};
        }
        set!(
            clauses,
            vote_target,
            sensitivity,
            epochs,
            states,
            negated_literals
        );
        set!(
            max_features,
            min_df,
            k,
            learning_rate,
            iterations,
            seed,
            holdout
        );
        if self.known.is_some() {
            c.known = self.known.clone();
        }
        if self.novel.is_some() {
            c.novel = self.novel.clone();
        }
        if self.rule_threshold.is_some() {
            c.rule_threshold = self.rule_threshold;
        }
        if self.meta.is_some() {
            c.meta = self.meta;
        }
        c.balanced |= self.balanced;
        c
    }
}

/// Parses `args` (program name first) and runs the command. Help and
/// version requests print and succeed; other parse failures are
/// configuration errors.
pub fn main_with_args<I, S>(args: I, out: &mut dyn Write) -> Result<()>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    write!(out, "{e}").map_err(|e| Error::io("<stdout>", e))
                }
                _ => Err(Error::param(e.to_string().trim_end().to_string())),
            };
        }
    };
    run(cli, out)
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    let defaults = RunConfig::default();
    match cli.command {
        Command::Train { opts, model_dir } => {
            cmd_train(&opts.apply(&defaults), &model_dir, out)?;
        }
        Command::Score {
            opts,
            model_dir,
            out: path,
        } => {
            // Scoring reuses the training configuration; flags override it.
            let art = ModelArtifacts::load(&model_dir)?;
            let cfg = opts.apply(&RunConfig {
                known: None,
                novel: None,
                balanced: false,
                ..art.config
            });
            let table = cmd_score(&cfg, &model_dir, &path)?;
            writeln!(
                out,
                "wrote {} rows to {}",
                table.records.len(),
                path.display()
            )
            .map_err(|e| Error::io("<stdout>", e))?;
        }
        Command::FitMeta {
            opts,
            scores,
            out: path,
        } => {
            let cfg = opts.apply(&defaults);
            let choice = cfg.meta.unwrap_or(MetaChoice::Knn);
            let model = cmd_fit_meta(&cfg, choice, &scores, &path)?;
            writeln!(
                out,
                "wrote {} meta model to {}",
                model.kind_name(),
                path.display()
            )
            .map_err(|e| Error::io("<stdout>", e))?;
        }
        Command::Detect {
            opts,
            model_dir,
            meta_model,
            text,
            file,
        } => {
            let art = ModelArtifacts::load(&model_dir)?;
            let cfg = opts.apply(&RunConfig {
                rule_threshold: None,
                meta: None,
                ..art.config.clone()
            });
            cfg.validate()?;
            let decider = Decider::from_config(&cfg, &art, meta_model.as_deref())?;
            let inputs: Vec<(Option<String>, String)> = match (text, file) {
                (Some(t), _) => vec![(None, t)],
                (None, Some(f)) => load_corpus(&f)?
                    .documents
                    .into_iter()
                    .map(|d| (Some(d.id), d.text))
                    .collect(),
                (None, None) => return Err(Error::param("--text or --file is required")),
            };
            cmd_detect(&art, &decider, &inputs, out)?;
        }
        Command::DumpClauses { model_dir, top_k } => {
            let art = ModelArtifacts::load(&model_dir)?;
            cmd_dump_clauses(&art, top_k, out)?;
        }
        Command::Eval {
            opts,
            model_dir,
            report,
        } => {
            cmd_eval(
                &opts.apply(&defaults),
                model_dir.as_deref(),
                report.as_deref(),
                out,
            )?;
        }
        Command::Synth {
            out: dir,
            topics,
            words_per_topic,
            docs_per_topic,
            words_per_doc,
            overlap,
            seed,
        } => {
            let spec = SyntheticSpec {
                topics,
                words_per_topic,
                docs_per_topic,
                words_per_doc,
                overlap,
                seed,
            };
            cmd_synth(&spec, &dir)?;
            writeln!(out, "wrote {topics} topics to {}", dir.display())
                .map_err(|e| Error::io("<stdout>", e))?;
        }
    }
    Ok(())
}
