//! Open-world text classification with Tsetlin machines.
//!
//! A Tsetlin machine learns conjunctive clauses over a bag-of-words
//! binarization of text. Counting the clauses that match an input, per class
//! and per polarity, yields novelty scores: inputs from the known classes
//! trigger many clauses, inputs from unseen topics trigger few. The scores
//! feed either a threshold rule or a small meta-classifier that decides
//! between "known" and "novel".
//!
//! Module map:
//!
//! - [`tm`]: automata, clauses, the vote sum and Type I / Type II training.
//! - [`text`]: tokenization, vocabulary building and binarization.
//! - [`novelty`]: one machine per class, novelty score rows, normalization
//!   and the threshold rule.
//! - [`meta`]: KNN and logistic regression meta-classifiers plus metrics.
//! - [`cli`]: the `owtm` command line pipeline.

pub mod cli;
pub mod error;
pub mod meta;
pub mod novelty;
pub mod num;
pub mod synthetic;
pub mod text;
pub mod tm;

pub use error::{Error, Result};
pub use num::Scalar;

/// Min-max statistics over `f64` score columns.
pub type MinMaxStatsF64 = novelty::MinMaxStats<f64>;
/// Min-max statistics over `f32` score columns.
pub type MinMaxStatsF32 = novelty::MinMaxStats<f32>;
/// Meta-classifier dataset in double precision.
pub type MetaDatasetF64 = meta::MetaDataset<f64>;
/// Meta-classifier dataset in single precision.
pub type MetaDatasetF32 = meta::MetaDataset<f32>;
/// Trained meta-classifier in double precision.
pub type MetaModelF64 = meta::MetaModel<f64>;
/// Trained meta-classifier in single precision.
pub type MetaModelF32 = meta::MetaModel<f32>;
pub type KnnF64 = meta::Knn<f64>;
pub type KnnF32 = meta::Knn<f32>;
pub type LogisticF64 = meta::Logistic<f64>;
pub type LogisticF32 = meta::Logistic<f32>;
