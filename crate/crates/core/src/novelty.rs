//! Per-class novelty scores.
//!
//! One machine per known class, trained one-vs-rest. For an input, each
//! machine reports how many of its positive and how many of its negative
//! clauses match; polarity only decides which count a match goes into.
//! Inputs resembling the training data match many clauses, novel inputs few.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::num::Scalar;
use crate::text::FeatureVector;
use crate::tm::{TrainParams, TsetlinMachine};

pub const MULTICLASS_MAGIC: &[u8; 5] = b"OWMC1";

/// Clause match counts of one class machine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassScore {
    pub label: String,
    pub pos_sum: usize,
    pub neg_sum: usize,
}

impl ClassScore {
    pub fn total(&self) -> usize {
        self.pos_sum + self.neg_sum
    }
}

/// Novelty scores of one input, one entry per class in model order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoveltyFeatureRow {
    pub scores: Vec<ClassScore>,
}

impl NoveltyFeatureRow {
    /// Raw counts laid out as `[pos_0, neg_0, pos_1, neg_1, ...]`.
    pub fn columns(&self) -> Vec<usize> {
        self.scores
            .iter()
            .flat_map(|s| [s.pos_sum, s.neg_sum])
            .collect()
    }

    pub fn columns_as<T: Scalar>(&self) -> Vec<T> {
        self.columns().into_iter().map(T::from_count).collect()
    }

    pub fn total(&self) -> usize {
        self.scores.iter().map(ClassScore::total).sum()
    }

    pub fn score(&self, label: &str) -> Result<&ClassScore> {
        self.scores
            .iter()
            .find(|s| s.label == label)
            .ok_or_else(|| Error::UnknownClass(label.to_string()))
    }
}

/// One Tsetlin machine per known class.
#[derive(Clone, Debug, PartialEq)]
pub struct MulticlassTm {
    labels: Vec<String>,
    machines: Vec<TsetlinMachine>,
}

impl MulticlassTm {
    pub fn new(labels: Vec<String>, machines: Vec<TsetlinMachine>) -> Result<Self> {
        if labels.is_empty() || labels.len() != machines.len() {
            return Err(Error::param(format!(
                "{} labels for {} machines",
                labels.len(),
                machines.len()
            )));
        }
        let o = machines[0].vocab_size();
        if let Some(m) = machines.iter().find(|m| m.vocab_size() != o) {
            return Err(Error::DimensionMismatch {
                expected: o,
                got: m.vocab_size(),
            });
        }
        Ok(MulticlassTm { labels, machines })
    }

    /// Trains one machine per label. Machine `c` sees examples of class `c`
    /// as 1 and every other example as 0, and is seeded with
    /// `params.seed + c`. Machines are trained on separate threads.
    pub fn fit_one_vs_rest(
        labels: Vec<String>,
        vocab_size: usize,
        examples: &[(FeatureVector, usize)],
        params: &TrainParams,
    ) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::Empty("no class labels".into()));
        }
        if let Some((_, c)) = examples.iter().find(|(_, c)| *c >= labels.len()) {
            return Err(Error::param(format!("class index {c} out of range")));
        }
        let jobs: Vec<(TsetlinMachine, Vec<(FeatureVector, bool)>)> = (0..labels.len())
            .map(|c| {
                let p = TrainParams {
                    seed: params.seed.wrapping_add(c as u64),
                    ..params.clone()
                };
                let data = examples
                    .iter()
                    .map(|(x, label)| (x.clone(), *label == c))
                    .collect();
                TsetlinMachine::new(vocab_size, p).map(|m| (m, data))
            })
            .collect::<Result<_>>()?;

        let machines = std::thread::scope(|scope| {
            let handles: Vec<_> = jobs
                .into_iter()
                .map(|(mut m, data)| {
                    scope.spawn(move || {
                        m.fit(&data)?;
                        Ok::<_, Error>(m)
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("training thread panicked"))
                .collect::<Result<Vec<_>>>()
        })?;
        MulticlassTm::new(labels, machines)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn machines(&self) -> &[TsetlinMachine] {
        &self.machines
    }

    pub fn machine(&self, label: &str) -> Option<&TsetlinMachine> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| &self.machines[i])
    }

    pub fn vocab_size(&self) -> usize {
        self.machines[0].vocab_size()
    }

    /// Clause count of the largest machine.
    pub fn max_clauses(&self) -> usize {
        self.machines
            .iter()
            .map(|m| m.num_clauses())
            .max()
            .unwrap_or(0)
    }

    pub fn novelty_features(&self, x: &FeatureVector) -> Result<NoveltyFeatureRow> {
        let scores = self
            .labels
            .iter()
            .zip(&self.machines)
            .map(|(label, m)| {
                let (pos_sum, neg_sum) = m.match_counts(x)?;
                Ok(ClassScore {
                    label: label.clone(),
                    pos_sum,
                    neg_sum,
                })
            })
            .collect::<Result<_>>()?;
        Ok(NoveltyFeatureRow { scores })
    }

    /// `"OWMC1"`, `u32` class count, then per class a `u32` label length,
    /// the UTF-8 label and the machine in its own binary format.
    pub fn write_to<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        w.write_all(MULTICLASS_MAGIC)?;
        w.write_all(&(self.labels.len() as u32).to_le_bytes())?;
        for (label, m) in self.labels.iter().zip(&self.machines) {
            w.write_all(&(label.len() as u32).to_le_bytes())?;
            w.write_all(label.as_bytes())?;
            m.write_to(w)?;
        }
        Ok(())
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.write_to(&mut out)
            .expect("writing to a Vec cannot fail");
        out
    }

    pub fn read_from<R: Read>(r: &mut R) -> Result<Self> {
        let mut magic = [0u8; 5];
        r.read_exact(&mut magic)
            .map_err(|_| Error::Format("truncated model".into()))?;
        if &magic != MULTICLASS_MAGIC {
            return Err(Error::Format(format!("bad magic {magic:?}")));
        }
        let count = crate::tm::read_u32(r)? as usize;
        let mut labels = Vec::with_capacity(count);
        let mut machines = Vec::with_capacity(count);
        for _ in 0..count {
            let len = crate::tm::read_u32(r)? as usize;
            let mut raw = vec![0u8; len];
            r.read_exact(&mut raw)
                .map_err(|_| Error::Format("truncated label".into()))?;
            labels.push(
                String::from_utf8(raw).map_err(|_| Error::Format("label is not UTF-8".into()))?,
            );
            machines.push(TsetlinMachine::read_from(r)?);
        }
        MulticlassTm::new(labels, machines)
    }

    pub fn from_bytes(mut bytes: &[u8]) -> Result<Self> {
        let m = Self::read_from(&mut bytes)?;
        if !bytes.is_empty() {
            return Err(Error::Format(format!("{} trailing bytes", bytes.len())));
        }
        Ok(m)
    }
}

/// Per-column min/max frozen from a reference (training) batch.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(bound = "")]
pub struct MinMaxStats<T: Scalar> {
    pub min: Vec<T>,
    pub max: Vec<T>,
}

impl<T: Scalar> MinMaxStats<T> {
    pub fn fit(rows: &[Vec<T>]) -> Result<Self> {
        let first = rows
            .first()
            .ok_or_else(|| Error::Empty("cannot fit normalization on an empty batch".into()))?;
        let mut min = first.clone();
        let mut max = first.clone();
        for row in &rows[1..] {
            check_width(row.len(), min.len())?;
            for (j, &v) in row.iter().enumerate() {
                min[j] = min[j].min(v);
                max[j] = max[j].max(v);
            }
        }
        Ok(MinMaxStats { min, max })
    }

    pub fn fit_scores(rows: &[NoveltyFeatureRow]) -> Result<Self> {
        let cols: Vec<Vec<T>> = rows.iter().map(NoveltyFeatureRow::columns_as).collect();
        Self::fit(&cols)
    }

    pub fn width(&self) -> usize {
        self.min.len()
    }

    /// Scales into `[0, 1]`, clipping values outside the frozen range.
    /// Columns with `max == min` map to 0.
    pub fn transform_row(&self, row: &[T]) -> Result<Vec<T>> {
        check_width(row.len(), self.width())?;
        Ok(row
            .iter()
            .zip(self.min.iter().zip(&self.max))
            .map(|(&v, (&lo, &hi))| {
                let span = hi - lo;
                if span <= T::zero() {
                    T::zero()
                } else {
                    ((v - lo) / span).max(T::zero()).min(T::one())
                }
            })
            .collect())
    }

    pub fn transform(&self, rows: &[Vec<T>]) -> Result<Vec<Vec<T>>> {
        if rows.is_empty() {
            return Err(Error::Empty("cannot normalize an empty batch".into()));
        }
        rows.iter().map(|r| self.transform_row(r)).collect()
    }
}

fn check_width(got: usize, expected: usize) -> Result<()> {
    if got != expected {
        return Err(Error::DimensionMismatch { expected, got });
    }
    Ok(())
}

/// Min-max scales a batch of score rows with frozen statistics.
pub fn normalize_scores<T: Scalar>(
    rows: &[NoveltyFeatureRow],
    stats: &MinMaxStats<T>,
) -> Result<Vec<Vec<T>>> {
    let cols: Vec<Vec<T>> = rows.iter().map(NoveltyFeatureRow::columns_as).collect();
    stats.transform(&cols)
}

/// Threshold rule: an input is evidence for a class when more than
/// `threshold` of that class's positive clauses, or more than `threshold` of
/// its negative clauses, match.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct RuleClassifier {
    pub threshold: usize,
}

impl RuleClassifier {
    /// `threshold` may not exceed `m / 2`, the size of one polarity bank.
    pub fn new(threshold: usize, num_clauses: usize) -> Result<Self> {
        if threshold > num_clauses / 2 {
            return Err(Error::param(format!(
                "rule threshold {threshold} exceeds m/2 = {}",
                num_clauses / 2
            )));
        }
        Ok(RuleClassifier { threshold })
    }

    pub fn matches(&self, score: &ClassScore) -> bool {
        score.pos_sum > self.threshold || score.neg_sum > self.threshold
    }

    pub fn classify(&self, row: &NoveltyFeatureRow, label: &str) -> Result<bool> {
        Ok(self.matches(row.score(label)?))
    }

    /// True when any class accepts the row.
    pub fn is_known(&self, row: &NoveltyFeatureRow) -> bool {
        row.scores.iter().any(|s| self.matches(s))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Novel,
    Known(String),
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Novel => f.write_str("NOVEL"),
            Verdict::Known(c) => write!(f, "KNOWN {c}"),
        }
    }
}

/// Class with the largest positive count, first class on ties.
pub fn attribute_class(row: &NoveltyFeatureRow) -> &str {
    row.scores
        .iter()
        .enumerate()
        .max_by(|(i, a), (j, b)| a.pos_sum.cmp(&b.pos_sum).then(j.cmp(i)))
        .map(|(_, s)| s.label.as_str())
        .expect("rows have at least one class")
}

/// Novel unless some class accepts the row; a known row is attributed with
/// [`attribute_class`].
pub fn verdict_for_row(rc: &RuleClassifier, row: &NoveltyFeatureRow) -> Verdict {
    if rc.is_known(row) {
        Verdict::Known(attribute_class(row).to_string())
    } else {
        Verdict::Novel
    }
}

pub fn detect(
    mtm: &MulticlassTm,
    rc: &RuleClassifier,
    x: &FeatureVector,
) -> Result<(Verdict, NoveltyFeatureRow)> {
    let row = mtm.novelty_features(x)?;
    Ok((verdict_for_row(rc, &row), row))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(pairs: &[(usize, usize)]) -> NoveltyFeatureRow {
        NoveltyFeatureRow {
            scores: pairs
                .iter()
                .enumerate()
                .map(|(i, &(p, n))| ClassScore {
                    label: format!("c{i}"),
                    pos_sum: p,
                    neg_sum: n,
                })
                .collect(),
        }
    }

    #[test]
    fn minmax_basic_degenerate_and_clipping() {
        let train = vec![vec![0.0, 7.0], vec![5.0, 7.0], vec![10.0, 7.0]];
        let st = MinMaxStats::<f64>::fit(&train).unwrap();
        let t = st.transform(&train).unwrap();
        assert_eq!(
            t.iter().map(|r| r[0]).collect::<Vec<_>>(),
            vec![0.0, 0.5, 1.0]
        );
        assert!(t.iter().all(|r| r[1] == 0.0));
        assert_eq!(st.transform_row(&[15.0, 9.0]).unwrap(), vec![1.0, 0.0]);
        assert_eq!(st.transform_row(&[-3.0, 7.0]).unwrap(), vec![0.0, 0.0]);
    }

    #[test]
    fn minmax_empty_batch_errors() {
        assert!(MinMaxStats::<f32>::fit(&[]).is_err());
        let st = MinMaxStats::<f32>::fit(&[vec![1.0]]).unwrap();
        assert!(st.transform(&[]).is_err());
        assert!(st.transform_row(&[1.0, 2.0]).is_err());
    }

    #[test]
    fn rule_on_typical_known_and_novel_rows() {
        let rc = RuleClassifier::new(5, 20).unwrap();
        let known = row(&[(6, 3)]);
        let novel = row(&[(2, 1)]);
        assert!(rc.classify(&known, "c0").unwrap());
        assert!(!rc.classify(&novel, "c0").unwrap());
        assert!(matches!(
            rc.classify(&known, "zz"),
            Err(Error::UnknownClass(_))
        ));
    }

    #[test]
    fn rule_negative_branch_and_zero_threshold() {
        let rc = RuleClassifier::new(5, 20).unwrap();
        assert!(rc.classify(&row(&[(0, 6)]), "c0").unwrap());
        let rc0 = RuleClassifier::new(0, 20).unwrap();
        assert!(rc0.classify(&row(&[(1, 0)]), "c0").unwrap());
        assert!(!rc0.classify(&row(&[(0, 0)]), "c0").unwrap());
    }

    #[test]
    fn rule_threshold_bound() {
        assert!(RuleClassifier::new(11, 20).is_err());
        assert!(RuleClassifier::new(10, 20).is_ok());
    }

    #[test]
    fn verdicts() {
        let rc = RuleClassifier::new(2, 20).unwrap();
        assert_eq!(
            verdict_for_row(&rc, &row(&[(0, 0), (0, 0)])),
            Verdict::Novel
        );
        assert_eq!(
            verdict_for_row(&rc, &row(&[(1, 0), (5, 0)])),
            Verdict::Known("c1".into())
        );
        // accepted via a negative bank, attributed by pos_sum with ties to the first class
        assert_eq!(
            verdict_for_row(&rc, &row(&[(1, 9), (1, 0)])),
            Verdict::Known("c0".into())
        );
    }

    #[test]
    fn columns_layout() {
        let r = row(&[(1, 2), (3, 4)]);
        assert_eq!(r.columns(), vec![1, 2, 3, 4]);
        assert_eq!(r.total(), 10);
    }
}
