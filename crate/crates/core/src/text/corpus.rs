use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub id: String,
    pub label: String,
    pub text: String,
}

/// Labelled documents, in load order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Corpus {
    pub documents: Vec<Document>,
}

impl Corpus {
    pub fn new(documents: Vec<Document>) -> Self {
        Corpus { documents }
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    /// Distinct labels in sorted order.
    pub fn labels(&self) -> Vec<String> {
        self.documents
            .iter()
            .map(|d| d.label.clone())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    pub fn texts(&self) -> Vec<&str> {
        self.documents.iter().map(|d| d.text.as_str()).collect()
    }

    pub fn with_label<'a>(&'a self, label: &'a str) -> impl Iterator<Item = &'a Document> + 'a {
        self.documents.iter().filter(move |d| d.label == label)
    }
}

/// Loads a corpus from either a directory with one subdirectory per class
/// (one `.txt` file per document) or a two-column `label,text` delimited
/// file. Files ending in `.tsv` are tab separated, everything else comma
/// separated. A leading `label,text` header row is skipped.
pub fn load_corpus(path: &Path) -> Result<Corpus> {
    let meta = fs::metadata(path).map_err(|e| Error::io(path, e))?;
    let corpus = if meta.is_dir() {
        load_dir(path)?
    } else {
        load_delimited(path)?
    };
    if corpus.is_empty() {
        return Err(Error::Empty(format!("{}: no documents", path.display())));
    }
    Ok(corpus)
}

fn load_dir(root: &Path) -> Result<Corpus> {
    let mut class_dirs = Vec::new();
    for entry in fs::read_dir(root).map_err(|e| Error::io(root, e))? {
        let entry = entry.map_err(|e| Error::io(root, e))?;
        if entry.path().is_dir() {
            class_dirs.push(entry.path());
        }
    }
    class_dirs.sort();

    let mut documents = Vec::new();
    for dir in class_dirs {
        let label = dir
            .file_name()
            .and_then(|n| n.to_str())
            .ok_or_else(|| Error::Format(format!("{}: non UTF-8 class name", dir.display())))?
            .to_string();
        let mut files = Vec::new();
        for entry in fs::read_dir(&dir).map_err(|e| Error::io(&dir, e))? {
            let p = entry.map_err(|e| Error::io(&dir, e))?.path();
            if p.is_file() && p.extension().is_some_and(|e| e == "txt") {
                files.push(p);
            }
        }
        files.sort();
        for f in files {
            let text = fs::read_to_string(&f).map_err(|e| Error::io(&f, e))?;
            let name = f.file_name().and_then(|n| n.to_str()).unwrap_or_default();
            documents.push(Document {
                id: format!("{label}/{name}"),
                label: label.clone(),
                text,
            });
        }
    }
    Ok(Corpus { documents })
}

fn load_delimited(path: &Path) -> Result<Corpus> {
    let delimiter = if path.extension().is_some_and(|e| e == "tsv") {
        b'\t'
    } else {
        b','
    };
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .delimiter(delimiter)
        .flexible(false)
        .from_path(path)
        .map_err(|e| match e.into_kind() {
            csv::ErrorKind::Io(io) => Error::io(path, io),
            other => Error::Format(format!("{}: {other:?}", path.display())),
        })?;
    let mut documents = Vec::new();
    for (row, rec) in rdr.records().enumerate() {
        let rec = rec?;
        if rec.len() != 2 {
            return Err(Error::Format(format!(
                "{}: row {row} has {} columns, expected 2",
                path.display(),
                rec.len()
            )));
        }
        if row == 0 && &rec[0] == "label" && &rec[1] == "text" {
            continue;
        }
        documents.push(Document {
            id: format!("row{row}"),
            label: rec[0].to_string(),
            text: rec[1].to_string(),
        });
    }
    Ok(Corpus { documents })
}
