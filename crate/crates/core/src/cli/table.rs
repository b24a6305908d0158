//! Score table: comma separated, one `#` header line, then
//! `doc_id,source_label,pos_<c>,neg_<c>,...,npos_<c>,nneg_<c>,...` with
//! classes in model order.

use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::novelty::{ClassScore, NoveltyFeatureRow};

#[derive(Clone, Debug, PartialEq)]
pub struct ScoreRecord {
    pub doc_id: String,
    pub source_label: String,
    pub row: NoveltyFeatureRow,
    pub normalized: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScoreTable {
    pub classes: Vec<String>,
    pub records: Vec<ScoreRecord>,
}

impl ScoreTable {
    pub fn column_names(&self) -> Vec<String> {
        let mut cols = vec!["doc_id".to_string(), "source_label".to_string()];
        for c in &self.classes {
            cols.push(format!("pos_{c}"));
            cols.push(format!("neg_{c}"));
        }
        for c in &self.classes {
            cols.push(format!("npos_{c}"));
            cols.push(format!("nneg_{c}"));
        }
        cols
    }

    /// A record is known when its source label is one of the model classes.
    pub fn is_known(&self, r: &ScoreRecord) -> bool {
        self.classes.contains(&r.source_label)
    }

    pub fn write<W: Write>(&self, mut w: W, header: &str) -> Result<()> {
        writeln!(w, "# {header}").map_err(|e| Error::io("<score table>", e))?;
        let mut out = csv::Writer::from_writer(w);
        out.write_record(self.column_names())?;
        for r in &self.records {
            let mut rec = vec![r.doc_id.clone(), r.source_label.clone()];
            rec.extend(r.row.columns().iter().map(usize::to_string));
            rec.extend(r.normalized.iter().map(|v| format!("{v:.6}")));
            out.write_record(&rec)?;
        }
        out.flush().map_err(|e| Error::io("<score table>", e))?;
        Ok(())
    }

    pub fn save(&self, path: &Path, header: &str) -> Result<()> {
        let f = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        self.write(std::io::BufWriter::new(f), header)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .from_path(path)
            .map_err(|e| match e.into_kind() {
                csv::ErrorKind::Io(io) => Error::io(path, io),
                other => Error::Format(format!("{}: {other:?}", path.display())),
            })?;
        let headers = rdr.headers()?.clone();
        let bad = |m: String| Error::Format(format!("{}: {m}", path.display()));
        if headers.len() < 6 || (headers.len() - 2) % 4 != 0 {
            return Err(bad(format!("unexpected column count {}", headers.len())));
        }
        if &headers[0] != "doc_id" || &headers[1] != "source_label" {
            return Err(bad("missing doc_id/source_label columns".into()));
        }
        let n = (headers.len() - 2) / 4;
        let mut classes = Vec::with_capacity(n);
        for i in 0..n {
            let c = headers[2 + 2 * i]
                .strip_prefix("pos_")
                .ok_or_else(|| bad(format!("column {} is not pos_<class>", 2 + 2 * i)))?;
            classes.push(c.to_string());
        }
        let table = ScoreTable {
            classes,
            records: Vec::new(),
        };
        if table
            .column_names()
            .iter()
            .map(String::as_str)
            .ne(headers.iter())
        {
            return Err(bad(
                "column names do not follow the score table layout".into()
            ));
        }
        let mut records = Vec::new();
        for rec in rdr.records() {
            let rec = rec?;
            let count = |i: usize| {
                rec[i]
                    .parse::<usize>()
                    .map_err(|_| bad(format!("bad count `{}`", &rec[i])))
            };
            let scores = (0..n)
                .map(|i| {
                    Ok(ClassScore {
                        label: table.classes[i].clone(),
                        pos_sum: count(2 + 2 * i)?,
                        neg_sum: count(3 + 2 * i)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let normalized = (2 + 2 * n..2 + 4 * n)
                .map(|i| {
                    rec[i]
                        .parse::<f64>()
                        .map_err(|_| bad(format!("bad normalized value `{}`", &rec[i])))
                })
                .collect::<Result<Vec<_>>>()?;
            records.push(ScoreRecord {
                doc_id: rec[0].to_string(),
                source_label: rec[1].to_string(),
                row: NoveltyFeatureRow { scores },
                normalized,
            });
        }
        Ok(ScoreTable { records, ..table })
    }
}
