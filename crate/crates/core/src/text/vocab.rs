use std::collections::{HashMap, HashSet};
use std::io::{BufRead, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::text::FeatureVector;

/// Lowercases `text` and splits it on non-alphanumeric characters. Tokens
/// made only of digits and tokens shorter than two characters are dropped.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .filter(|t| t.chars().count() >= 2)
        .filter(|t| !t.chars().all(|c| c.is_numeric()))
        .map(str::to_lowercase)
        .collect()
}

/// Dense term index. Indices run `0..len()` in the order terms were selected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vocabulary {
    terms: Vec<String>,
    index: HashMap<String, usize>,
}

impl Vocabulary {
    /// Builds a vocabulary from an explicit ordered term list.
    pub fn from_terms<I, S>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let terms: Vec<String> = terms.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(terms.len());
        for (i, t) in terms.iter().enumerate() {
            if index.insert(t.clone(), i).is_some() {
                return Err(Error::Format(format!("duplicate vocabulary term `{t}`")));
            }
        }
        Ok(Vocabulary { terms, index })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn term(&self, k: usize) -> Option<&str> {
        self.terms.get(k).map(String::as_str)
    }

    pub fn index_of(&self, term: &str) -> Option<usize> {
        self.index.get(term).copied()
    }

    /// Writes one term per line. Lines starting with `#` are comments and
    /// are skipped on load; `header` (if any) is written as such a line.
    pub fn write_to<W: Write>(&self, mut w: W, header: Option<&str>) -> std::io::Result<()> {
        if let Some(h) = header {
            writeln!(w, "# {h}")?;
        }
        for t in &self.terms {
            writeln!(w, "{t}")?;
        }
        Ok(())
    }

    pub fn read_from<R: BufRead>(r: R) -> Result<Self> {
        let mut terms = Vec::new();
        for line in r.lines() {
            let line = line.map_err(|e| Error::io("<vocabulary>", e))?;
            let line = line.trim_end_matches('\r');
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            terms.push(line.to_string());
        }
        Self::from_terms(terms)
    }

    pub fn save(&self, path: &Path, header: Option<&str>) -> Result<()> {
        let f = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        let mut w = std::io::BufWriter::new(f);
        self.write_to(&mut w, header)
            .and_then(|_| w.flush())
            .map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let f = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        Self::read_from(std::io::BufReader::new(f))
    }
}

/// Builds a vocabulary of at most `max_features` terms, each occurring in at
/// least `min_df` documents. Terms are ranked by document frequency
/// (descending), then lexicographically.
pub fn build_vocabulary<S: AsRef<str>>(
    corpus: &[S],
    max_features: usize,
    min_df: usize,
) -> Result<Vocabulary> {
    if corpus.is_empty() {
        return Err(Error::Empty("corpus has no documents".into()));
    }
    if max_features == 0 {
        return Err(Error::param("max_features must be positive"));
    }
    let mut df: HashMap<String, usize> = HashMap::new();
    for doc in corpus {
        let unique: HashSet<String> = tokenize(doc.as_ref()).into_iter().collect();
        for t in unique {
            *df.entry(t).or_insert(0) += 1;
        }
    }
    let mut ranked: Vec<(String, usize)> = df.into_iter().filter(|(_, n)| *n >= min_df).collect();
    if ranked.is_empty() {
        return Err(Error::Empty(format!(
            "no term occurs in at least {min_df} documents"
        )));
    }
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    ranked.truncate(max_features);
    Vocabulary::from_terms(ranked.into_iter().map(|(t, _)| t))
}

/// Presence/absence vector of `text` over `vocab`. Out-of-vocabulary tokens
/// are ignored.
pub fn binarize(text: &str, vocab: &Vocabulary) -> FeatureVector {
    let mut x = FeatureVector::zeros(vocab.len());
    for tok in tokenize(text) {
        if let Some(k) = vocab.index_of(&tok) {
            x.set(k, true);
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokenize_splits_hyphens_and_lowercases() {
        assert_eq!(
            tokenize("Navy-related scientific"),
            vec!["navy", "related", "scientific"]
        );
    }

    #[test]
    fn tokenize_empty() {
        assert!(tokenize("").is_empty());
    }

    #[test]
    fn tokenize_drops_digits_and_short_tokens() {
        assert_eq!(tokenize("10,000 wrongful"), vec!["wrongful"]);
        assert_eq!(tokenize("a I x1 42 b2b"), vec!["x1", "b2b"]);
    }

    #[test]
    fn vocabulary_all_filtered_is_error() {
        let err = build_vocabulary(&["a cat", "a dog"], 10, 2).unwrap_err();
        assert!(matches!(err, Error::Empty(_)));
    }

    #[test]
    fn vocabulary_min_df() {
        let v = build_vocabulary(&["cat dog", "cat"], 10, 2).unwrap();
        assert_eq!(v.terms(), &["cat".to_string()]);
    }

    #[test]
    fn vocabulary_cap_and_ordering() {
        let corpus = ["bb aa cc", "aa cc", "cc dd"];
        let v = build_vocabulary(&corpus, 1, 1).unwrap();
        assert_eq!(v.terms(), &["cc".to_string()]);
        let v = build_vocabulary(&corpus, 10, 1).unwrap();
        assert_eq!(v.terms(), &["cc", "aa", "bb", "dd"]);
    }

    #[test]
    fn empty_corpus_is_error() {
        let empty: [&str; 0] = [];
        assert!(build_vocabulary(&empty, 10, 1).is_err());
    }

    #[test]
    fn binarize_sets_index_and_ignores_oov() {
        let v = Vocabulary::from_terms(["zero", "one", "two", "three", "four", "navy"]).unwrap();
        let x = binarize("The Navy sails; the navy waits.", &v);
        assert!(x[5]);
        assert_eq!(x.count_ones(), 1);
        assert_eq!(binarize("nothing shared here", &v), FeatureVector::zeros(6));
    }

    #[test]
    fn duplicate_terms_rejected() {
        assert!(Vocabulary::from_terms(["a1", "a1"]).is_err());
    }

    #[test]
    fn save_load_skips_header() {
        let v = Vocabulary::from_terms(["alpha", "beta"]).unwrap();
        let mut buf = Vec::new();
        v.write_to(&mut buf, Some("owtm 0.1.0")).unwrap();
        let back = Vocabulary::read_from(&buf[..]).unwrap();
        assert_eq!(back, v);
    }
}
