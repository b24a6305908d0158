//! Synthetic topic corpora: each topic draws words uniformly (with
//! replacement) from its own word list, optionally sharing a fraction of
//! that list with every other topic.

use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::text::{Corpus, Document};

#[derive(Clone, Debug, PartialEq)]
pub struct SyntheticSpec {
    pub topics: usize,
    pub words_per_topic: usize,
    pub docs_per_topic: usize,
    pub words_per_doc: usize,
    /// Fraction of each topic's word list taken from a pool shared by all
    /// topics.
    pub overlap: f64,
    pub seed: u64,
}

impl Default for SyntheticSpec {
    fn default() -> Self {
        SyntheticSpec {
            topics: 3,
            words_per_topic: 50,
            docs_per_topic: 200,
            words_per_doc: 20,
            overlap: 0.0,
            seed: 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SyntheticCorpus {
    pub labels: Vec<String>,
    /// Generating word list per topic, shared words included.
    pub vocabularies: Vec<Vec<String>>,
    pub corpus: Corpus,
}

pub fn topic_label(t: usize) -> String {
    format!("topic{}", (b'a' + (t % 26) as u8) as char)
}

pub fn generate(spec: &SyntheticSpec) -> Result<SyntheticCorpus> {
    if spec.topics == 0 || spec.words_per_topic == 0 || spec.words_per_doc == 0 {
        return Err(Error::param("synthetic corpus dimensions must be positive"));
    }
    if !(0.0..=1.0).contains(&spec.overlap) {
        return Err(Error::param("overlap must lie in [0, 1]"));
    }
    let shared_n = (spec.overlap * spec.words_per_topic as f64).round() as usize;
    let shared: Vec<String> = (0..shared_n).map(|i| format!("shared{i:03}")).collect();
    let labels: Vec<String> = (0..spec.topics).map(topic_label).collect();
    let vocabularies: Vec<Vec<String>> = labels
        .iter()
        .map(|label| {
            let own = (0..spec.words_per_topic - shared_n).map(|i| format!("{label}w{i:03}"));
            shared.iter().cloned().chain(own).collect()
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut documents = Vec::with_capacity(spec.topics * spec.docs_per_topic);
    for (label, words) in labels.iter().zip(&vocabularies) {
        for d in 0..spec.docs_per_topic {
            let text: Vec<&str> = (0..spec.words_per_doc)
                .map(|_| {
                    words
                        .choose(&mut rng)
                        .expect("non-empty word list")
                        .as_str()
                })
                .collect();
            documents.push(Document {
                id: format!("{label}/{d:04}.txt"),
                label: label.clone(),
                text: text.join(" "),
            });
        }
    }
    Ok(SyntheticCorpus {
        labels,
        vocabularies,
        corpus: Corpus::new(documents),
    })
}

impl SyntheticCorpus {
    /// Writes the documents of `labels` as `root/<label>/<nnnn>.txt`.
    pub fn write_dir(&self, root: &Path, labels: &[&str]) -> Result<()> {
        for doc in &self.corpus.documents {
            if !labels.contains(&doc.label.as_str()) {
                continue;
            }
            let path = root.join(&doc.id);
            if let Some(parent) = path.parent() {
                std::fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
            }
            std::fs::write(&path, &doc.text).map_err(|e| Error::io(&path, e))?;
        }
        Ok(())
    }
}
