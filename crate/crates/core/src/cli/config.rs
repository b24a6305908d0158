use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::meta::{MetaKind, DEFAULT_ITERATIONS, DEFAULT_K, DEFAULT_LEARNING_RATE};
use crate::text::{DEFAULT_MAX_FEATURES, DEFAULT_MIN_DF};
use crate::tm::{NegatedLiterals, TrainParams};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetaChoice {
    Knn,
    Logistic,
    Rule,
}

/// Everything a pipeline run depends on. Its hash stamps every output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub known: Option<PathBuf>,
    pub novel: Option<PathBuf>,
    pub clauses: usize,
    pub vote_target: u32,
    pub sensitivity: f64,
    pub epochs: usize,
    pub states: u16,
    pub negated_literals: NegatedLiterals,
    pub max_features: usize,
    pub min_df: usize,
    pub rule_threshold: Option<usize>,
    pub meta: Option<MetaChoice>,
    pub k: usize,
    pub learning_rate: f64,
    pub iterations: usize,
    pub seed: u64,
    pub balanced: bool,
    /// Fraction of each known class held out from TM training in `eval`.
    pub holdout: f64,
    /// Meta-classifier training fraction in `eval`.
    pub meta_train_fraction: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let tp = TrainParams::default();
        RunConfig {
            known: None,
            novel: None,
            clauses: tp.num_clauses,
            vote_target: tp.vote_target,
            sensitivity: tp.sensitivity,
            epochs: tp.epochs,
            states: tp.states_per_action,
            negated_literals: NegatedLiterals::TypeIiOnly,
            max_features: DEFAULT_MAX_FEATURES,
            min_df: DEFAULT_MIN_DF,
            rule_threshold: None,
            meta: None,
            k: DEFAULT_K,
            learning_rate: DEFAULT_LEARNING_RATE,
            iterations: DEFAULT_ITERATIONS,
            seed: tp.seed,
            balanced: false,
            holdout: 0.5,
            meta_train_fraction: 0.7,
        }
    }
}

impl RunConfig {
    pub fn train_params(&self) -> TrainParams {
        TrainParams {
            num_clauses: self.clauses,
            vote_target: self.vote_target,
            sensitivity: self.sensitivity,
            epochs: self.epochs,
            states_per_action: self.states,
            seed: self.seed,
            negated_literals: self.negated_literals,
        }
    }

    pub fn meta_kind(&self, choice: MetaChoice) -> Option<MetaKind> {
        match choice {
            MetaChoice::Knn => Some(MetaKind::Knn { k: self.k }),
            MetaChoice::Logistic => Some(MetaKind::Logistic {
                learning_rate: self.learning_rate,
                iterations: self.iterations,
            }),
            MetaChoice::Rule => None,
        }
    }

    /// Parameter checks only; paths are checked by [`require_path`].
    pub fn validate(&self) -> Result<()> {
        self.train_params().validate()?;
        if self.max_features == 0 {
            return Err(Error::param("--max-features must be positive"));
        }
        if let Some(t) = self.rule_threshold {
            if t > self.clauses / 2 {
                return Err(Error::param(format!(
                    "--rule-threshold {t} exceeds clauses/2 = {}",
                    self.clauses / 2
                )));
            }
        }
        if self.k == 0 || self.k.is_multiple_of(2) {
            return Err(Error::param("--k must be odd and positive"));
        }
        if self.learning_rate.is_nan() || self.learning_rate <= 0.0 {
            return Err(Error::param("--learning-rate must be positive"));
        }
        if !(0.0..1.0).contains(&self.holdout) {
            return Err(Error::param("--holdout must lie in [0, 1)"));
        }
        if !(self.meta_train_fraction > 0.0 && self.meta_train_fraction < 1.0) {
            return Err(Error::param("meta train fraction must lie in (0, 1)"));
        }
        Ok(())
    }

    /// First 16 hex digits of the SHA-256 of the JSON encoding.
    pub fn hash(&self) -> String {
        let json = serde_json::to_vec(self).expect("config serializes");
        let digest = Sha256::digest(&json);
        hex::encode(&digest[..8])
    }

    pub fn header(&self) -> String {
        format!("owtm {VERSION} config={}", self.hash())
    }
}

pub(crate) fn require_path<'a>(p: &'a Option<PathBuf>, flag: &str) -> Result<&'a Path> {
    let p = p
        .as_deref()
        .ok_or_else(|| Error::param(format!("{flag} is required")))?;
    if !p.exists() {
        return Err(Error::io(
            p,
            std::io::Error::new(std::io::ErrorKind::NotFound, "path does not exist"),
        ));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_is_stable_and_sensitive() {
        let a = RunConfig::default();
        assert_eq!(a.hash(), RunConfig::default().hash());
        assert_eq!(a.hash().len(), 16);
        let b = RunConfig {
            seed: 7,
            ..RunConfig::default()
        };
        assert_ne!(a.hash(), b.hash());
        assert!(a.header().starts_with("owtm "));
    }

    #[test]
    fn validation_errors_are_config_errors() {
        for c in [
            RunConfig {
                clauses: 7,
                ..RunConfig::default()
            },
            RunConfig {
                sensitivity: 0.5,
                ..RunConfig::default()
            },
            RunConfig {
                rule_threshold: Some(10_000),
                ..RunConfig::default()
            },
            RunConfig {
                k: 4,
                ..RunConfig::default()
            },
            RunConfig {
                holdout: 1.0,
                ..RunConfig::default()
            },
        ] {
            assert_eq!(c.validate().unwrap_err().exit_code(), 3);
        }
        RunConfig::default().validate().unwrap();
    }

    #[test]
    fn missing_path_is_input_error() {
        let err = require_path(&Some(PathBuf::from("/no/such/corpus")), "--known").unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert_eq!(require_path(&None, "--known").unwrap_err().exit_code(), 3);
    }
}
