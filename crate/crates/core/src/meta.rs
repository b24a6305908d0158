//! Meta-classifiers over normalized novelty rows: k-nearest neighbours and
//! logistic regression, plus accuracy metrics and a stratified split.
//!
//! Labels follow the novelty convention: `true` = known, `false` = novel.

use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::num::Scalar;

pub const DEFAULT_K: usize = 5;
pub const DEFAULT_LEARNING_RATE: f64 = 0.1;
pub const DEFAULT_ITERATIONS: usize = 500;

#[derive(Clone, Debug, PartialEq)]
pub struct MetaDataset<T: Scalar> {
    pub rows: Vec<Vec<T>>,
    pub labels: Vec<bool>,
}

impl<T: Scalar> MetaDataset<T> {
    pub fn new(rows: Vec<Vec<T>>, labels: Vec<bool>) -> Result<Self> {
        if rows.len() != labels.len() {
            return Err(Error::DimensionMismatch {
                expected: rows.len(),
                got: labels.len(),
            });
        }
        if let Some(first) = rows.first() {
            if let Some(bad) = rows.iter().find(|r| r.len() != first.len()) {
                return Err(Error::DimensionMismatch {
                    expected: first.len(),
                    got: bad.len(),
                });
            }
        }
        Ok(MetaDataset { rows, labels })
    }

    /// Like [`MetaDataset::new`], additionally requiring as many known as
    /// novel rows.
    pub fn new_balanced(rows: Vec<Vec<T>>, labels: Vec<bool>) -> Result<Self> {
        let ds = Self::new(rows, labels)?;
        let known = ds.count_known();
        if 2 * known != ds.len() {
            return Err(Error::param(format!(
                "balanced dataset expected, got {known} known of {}",
                ds.len()
            )));
        }
        Ok(ds)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn width(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn count_known(&self) -> usize {
        self.labels.iter().filter(|&&y| y).count()
    }

    pub fn subset(&self, idx: &[usize]) -> Self {
        MetaDataset {
            rows: idx.iter().map(|&i| self.rows[i].clone()).collect(),
            labels: idx.iter().map(|&i| self.labels[i]).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MetaKind {
    Knn {
        k: usize,
    },
    Logistic {
        learning_rate: f64,
        iterations: usize,
    },
}

impl MetaKind {
    pub fn knn() -> Self {
        MetaKind::Knn { k: DEFAULT_K }
    }

    pub fn logistic() -> Self {
        MetaKind::Logistic {
            learning_rate: DEFAULT_LEARNING_RATE,
            iterations: DEFAULT_ITERATIONS,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MetaKind::Knn { .. } => "knn",
            MetaKind::Logistic { .. } => "logistic",
        }
    }
}

impl FromStr for MetaKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "knn" => Ok(MetaKind::knn()),
            "logistic" => Ok(MetaKind::logistic()),
            other => Err(Error::param(format!("unknown meta-classifier `{other}`"))),
        }
    }
}

/// Stores the training rows; predicts by majority over the `k` nearest
/// (Euclidean) rows, breaking distance ties toward the lower row index.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Knn<T: Scalar> {
    pub k: usize,
    pub rows: Vec<Vec<T>>,
    pub labels: Vec<bool>,
}

impl<T: Scalar> Knn<T> {
    pub fn fit(k: usize, train: &MetaDataset<T>) -> Result<Self> {
        if k == 0 || k.is_multiple_of(2) {
            return Err(Error::param(format!(
                "knn k must be odd and positive, got {k}"
            )));
        }
        if train.is_empty() {
            return Err(Error::Empty("meta training set is empty".into()));
        }
        let known = train.count_known();
        if known == 0 || known == train.len() {
            log::warn!("knn trained on a single label; every prediction will be that label");
        }
        Ok(Knn {
            k,
            rows: train.rows.clone(),
            labels: train.labels.clone(),
        })
    }

    pub fn predict(&self, row: &[T]) -> Result<bool> {
        let width = self.rows[0].len();
        if row.len() != width {
            return Err(Error::DimensionMismatch {
                expected: width,
                got: row.len(),
            });
        }
        let mut dist: Vec<(T, usize)> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| (squared_distance(r, row), i))
            .collect();
        dist.sort_by(|a, b| {
            a.0.partial_cmp(&b.0)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(a.1.cmp(&b.1))
        });
        let k = self.k.min(dist.len());
        let known = dist[..k].iter().filter(|(_, i)| self.labels[*i]).count();
        Ok(match (2 * known).cmp(&k) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            // only when fewer than k rows exist
            std::cmp::Ordering::Equal => self.labels[dist[0].1],
        })
    }
}

fn squared_distance<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (&x, &y)| acc + (x - y) * (x - y))
}

/// Logistic regression fitted by full-batch gradient descent on the mean
/// cross-entropy, starting from zero weights.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Logistic<T: Scalar> {
    pub weights: Vec<T>,
    pub bias: T,
    pub learning_rate: T,
    pub iterations: usize,
}

impl<T: Scalar> Logistic<T> {
    pub fn fit(learning_rate: T, iterations: usize, train: &MetaDataset<T>) -> Result<Self> {
        Self::fit_with_history(learning_rate, iterations, train).map(|(m, _)| m)
    }

    /// Also returns the training loss before the first step and after each
    /// step (`iterations + 1` values).
    pub fn fit_with_history(
        learning_rate: T,
        iterations: usize,
        train: &MetaDataset<T>,
    ) -> Result<(Self, Vec<T>)> {
        if train.is_empty() {
            return Err(Error::Empty("meta training set is empty".into()));
        }
        let known = train.count_known();
        if known == 0 || known == train.len() {
            return Err(Error::SingleLabel(
                "logistic regression needs both known and novel rows".into(),
            ));
        }
        if learning_rate.is_nan() || learning_rate <= T::zero() {
            return Err(Error::param("learning rate must be positive"));
        }
        let mut model = Logistic {
            weights: vec![T::zero(); train.width()],
            bias: T::zero(),
            learning_rate,
            iterations,
        };
        let n = T::from_count(train.len());
        let mut history = Vec::with_capacity(iterations + 1);
        history.push(model.loss(train));
        let mut grad_w = vec![T::zero(); train.width()];
        for _ in 0..iterations {
            grad_w.iter_mut().for_each(|g| *g = T::zero());
            let mut grad_b = T::zero();
            for (row, &y) in train.rows.iter().zip(&train.labels) {
                let err = sigmoid(model.logit(row)) - target::<T>(y);
                for (g, &v) in grad_w.iter_mut().zip(row) {
                    *g = *g + err * v;
                }
                grad_b = grad_b + err;
            }
            for (w, &g) in model.weights.iter_mut().zip(&grad_w) {
                *w = *w - learning_rate * g / n;
            }
            model.bias = model.bias - learning_rate * grad_b / n;
            history.push(model.loss(train));
        }
        Ok((model, history))
    }

    fn logit(&self, row: &[T]) -> T {
        self.weights
            .iter()
            .zip(row)
            .fold(self.bias, |acc, (&w, &v)| acc + w * v)
    }

    pub fn probability(&self, row: &[T]) -> Result<T> {
        if row.len() != self.weights.len() {
            return Err(Error::DimensionMismatch {
                expected: self.weights.len(),
                got: row.len(),
            });
        }
        Ok(sigmoid(self.logit(row)))
    }

    /// Known iff the predicted probability is at least one half.
    pub fn predict(&self, row: &[T]) -> Result<bool> {
        Ok(self.probability(row)? >= T::lit(0.5))
    }

    /// Mean cross-entropy over `data`.
    pub fn loss(&self, data: &MetaDataset<T>) -> T {
        let total = data
            .rows
            .iter()
            .zip(&data.labels)
            .fold(T::zero(), |acc, (row, &y)| {
                let z = self.logit(row);
                // log(1 + e^z) - y z, evaluated without overflow
                let softplus = if z > T::zero() {
                    z + (-z).exp().ln_1p()
                } else {
                    z.exp().ln_1p()
                };
                acc + softplus - target::<T>(y) * z
            });
        total / T::from_count(data.len().max(1))
    }
}

fn sigmoid<T: Scalar>(z: T) -> T {
    if z >= T::zero() {
        T::one() / (T::one() + (-z).exp())
    } else {
        let e = z.exp();
        e / (T::one() + e)
    }
}

fn target<T: Scalar>(y: bool) -> T {
    if y {
        T::one()
    } else {
        T::zero()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", bound = "")]
pub enum MetaModel<T: Scalar> {
    Knn(Knn<T>),
    Logistic(Logistic<T>),
}

impl<T: Scalar> MetaModel<T> {
    pub fn predict(&self, row: &[T]) -> Result<bool> {
        match self {
            MetaModel::Knn(m) => m.predict(row),
            MetaModel::Logistic(m) => m.predict(row),
        }
    }

    pub fn predict_all(&self, rows: &[Vec<T>]) -> Result<Vec<bool>> {
        rows.iter().map(|r| self.predict(r)).collect()
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            MetaModel::Knn(_) => "knn",
            MetaModel::Logistic(_) => "logistic",
        }
    }
}

pub fn fit_meta<T: Scalar>(kind: MetaKind, train: &MetaDataset<T>) -> Result<MetaModel<T>> {
    match kind {
        MetaKind::Knn { k } => Knn::fit(k, train).map(MetaModel::Knn),
        MetaKind::Logistic {
            learning_rate,
            iterations,
        } => Logistic::fit(T::lit(learning_rate), iterations, train).map(MetaModel::Logistic),
    }
}

fn check_pair(preds: &[bool], truth: &[bool]) -> Result<()> {
    if preds.len() != truth.len() {
        return Err(Error::DimensionMismatch {
            expected: truth.len(),
            got: preds.len(),
        });
    }
    if preds.is_empty() {
        return Err(Error::Empty("no predictions to score".into()));
    }
    Ok(())
}

/// Fraction of positions where `preds` agrees with `truth`.
pub fn accuracy(preds: &[bool], truth: &[bool]) -> Result<f64> {
    check_pair(preds, truth)?;
    let hits = preds.iter().zip(truth).filter(|(p, t)| p == t).count();
    Ok(hits as f64 / preds.len() as f64)
}

/// Mean of the per-class recalls; a class absent from `truth` is skipped.
pub fn balanced_accuracy(preds: &[bool], truth: &[bool]) -> Result<f64> {
    check_pair(preds, truth)?;
    let recall = |class: bool| {
        let (hit, n) = preds
            .iter()
            .zip(truth)
            .filter(|(_, &t)| t == class)
            .fold((0usize, 0usize), |(h, n), (&p, _)| {
                (h + usize::from(p == class), n + 1)
            });
        (n > 0).then(|| hit as f64 / n as f64)
    };
    let rs: Vec<f64> = [true, false].into_iter().filter_map(recall).collect();
    Ok(rs.iter().sum::<f64>() / rs.len() as f64)
}

/// Splits indices per label, shuffled with `seed`, putting
/// `round(train_fraction * n_label)` of each label in the training part.
/// Both parts come back sorted.
pub fn stratified_split(
    labels: &[bool],
    train_fraction: f64,
    seed: u64,
) -> (Vec<usize>, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut train = Vec::new();
    let mut test = Vec::new();
    for class in [true, false] {
        let mut idx: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == class).collect();
        idx.shuffle(&mut rng);
        let cut = ((idx.len() as f64) * train_fraction).round() as usize;
        let cut = cut.min(idx.len());
        train.extend_from_slice(&idx[..cut]);
        test.extend_from_slice(&idx[cut..]);
    }
    train.sort_unstable();
    test.sort_unstable();
    (train, test)
}
