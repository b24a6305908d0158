//! Bag-of-words text processing: tokenization, vocabulary, binarization and
//! corpus loading.

mod corpus;
mod feature;
mod vocab;

pub use corpus::{load_corpus, Corpus, Document};
pub use feature::FeatureVector;
pub use vocab::{binarize, build_vocabulary, tokenize, Vocabulary};

pub const DEFAULT_MAX_FEATURES: usize = 8000;
pub const DEFAULT_MIN_DF: usize = 2;
