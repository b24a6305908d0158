use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::text::FeatureVector;
use crate::tm::feedback::{feedback_probability, type_i, type_ii};
use crate::tm::{Clause, EvalMode, Polarity};

/// How Type I feedback treats negated literals.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NegatedLiterals {
    /// Satisfied negated literals are rewarded exactly like plain ones.
    #[default]
    Standard,
    /// Type I never steps a negated literal toward Include; negated literals
    /// enter clauses only through Type II.
    TypeIiOnly,
}

/// Training hyperparameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrainParams {
    /// Total clause count `m`; half vote positive, half negative.
    pub num_clauses: usize,
    /// Vote target `T` used to clamp the vote in feedback probabilities.
    pub vote_target: u32,
    /// Sensitivity `s > 1`.
    pub sensitivity: f64,
    pub epochs: usize,
    /// States per action `N`; automata live in `[1, 2N]`.
    pub states_per_action: u16,
    pub seed: u64,
    #[serde(default)]
    pub negated_literals: NegatedLiterals,
}

impl Default for TrainParams {
    fn default() -> Self {
        TrainParams {
            num_clauses: 5000,
            vote_target: 25,
            sensitivity: 15.0,
            epochs: 100,
            states_per_action: 100,
            seed: 42,
            negated_literals: NegatedLiterals::default(),
        }
    }
}

impl TrainParams {
    pub fn validate(&self) -> Result<()> {
        if self.num_clauses == 0 || !self.num_clauses.is_multiple_of(2) {
            return Err(Error::param(format!(
                "clause count must be positive and even, got {}",
                self.num_clauses
            )));
        }
        if self.vote_target == 0 {
            return Err(Error::param("vote target must be positive"));
        }
        if !self.sensitivity.is_finite() || self.sensitivity <= 1.0 {
            return Err(Error::param(format!(
                "sensitivity must be finite and > 1, got {}",
                self.sensitivity
            )));
        }
        if self.states_per_action == 0 || self.states_per_action > u16::MAX / 2 {
            return Err(Error::param(format!(
                "states per action must lie in [1, {}], got {}",
                u16::MAX / 2,
                self.states_per_action
            )));
        }
        Ok(())
    }
}

/// A two-class Tsetlin machine.
#[derive(Clone, Debug, PartialEq)]
pub struct TsetlinMachine {
    params: TrainParams,
    vocab_size: usize,
    clauses: Vec<Clause>,
}

impl TsetlinMachine {
    /// Untrained machine: all clauses empty, automata at the weakest
    /// Exclude state.
    pub fn new(vocab_size: usize, params: TrainParams) -> Result<Self> {
        params.validate()?;
        let half = params.num_clauses / 2;
        let n = params.states_per_action;
        let clauses = (0..params.num_clauses)
            .map(|j| {
                let pol = if j < half {
                    Polarity::Positive
                } else {
                    Polarity::Negative
                };
                Clause::new(pol, vocab_size, n)
            })
            .collect();
        Ok(TsetlinMachine {
            params,
            vocab_size,
            clauses,
        })
    }

    /// Assembles a machine from explicit clauses: positives first, then
    /// negatives, equal counts. `params.num_clauses` is overwritten.
    pub fn from_clauses(
        vocab_size: usize,
        mut params: TrainParams,
        positive: Vec<Clause>,
        negative: Vec<Clause>,
    ) -> Result<Self> {
        if positive.len() != negative.len() {
            return Err(Error::param(format!(
                "{} positive vs {} negative clauses",
                positive.len(),
                negative.len()
            )));
        }
        params.num_clauses = positive.len() + negative.len();
        if params.num_clauses == 0 {
            return Err(Error::param("machine needs at least two clauses"));
        }
        params.validate()?;
        for (c, pol) in positive
            .iter()
            .map(|c| (c, Polarity::Positive))
            .chain(negative.iter().map(|c| (c, Polarity::Negative)))
        {
            if c.polarity() != pol {
                return Err(Error::param("clause polarity does not match its slot"));
            }
            if c.vocab_size() != vocab_size {
                return Err(Error::DimensionMismatch {
                    expected: vocab_size,
                    got: c.vocab_size(),
                });
            }
            if c.states_per_action() != params.states_per_action {
                return Err(Error::param("clause states per action differs from params"));
            }
        }
        let mut clauses = positive;
        clauses.extend(negative);
        Ok(TsetlinMachine {
            params,
            vocab_size,
            clauses,
        })
    }

    pub fn params(&self) -> &TrainParams {
        &self.params
    }

    pub fn vocab_size(&self) -> usize {
        self.vocab_size
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn positive_clauses(&self) -> &[Clause] {
        &self.clauses[..self.clauses.len() / 2]
    }

    pub fn negative_clauses(&self) -> &[Clause] {
        &self.clauses[self.clauses.len() / 2..]
    }

    fn check_dim(&self, x: &FeatureVector) -> Result<()> {
        if x.len() != self.vocab_size {
            return Err(Error::DimensionMismatch {
                expected: self.vocab_size,
                got: x.len(),
            });
        }
        Ok(())
    }

    /// Number of matching positive and negative clauses (inference
    /// semantics: empty clauses never match).
    pub fn match_counts(&self, x: &FeatureVector) -> Result<(usize, usize)> {
        self.check_dim(x)?;
        let count = |cs: &[Clause]| {
            cs.iter()
                .filter(|c| c.output(x, EvalMode::Inference))
                .count()
        };
        Ok((
            count(self.positive_clauses()),
            count(self.negative_clauses()),
        ))
    }

    /// Matching positive clauses minus matching negative clauses.
    pub fn vote_sum(&self, x: &FeatureVector) -> Result<i64> {
        let (pos, neg) = self.match_counts(x)?;
        Ok(pos as i64 - neg as i64)
    }

    /// Unit step of the vote sum; a tie (0) classifies as 1.
    pub fn classify(&self, x: &FeatureVector) -> Result<bool> {
        Ok(self.vote_sum(x)? >= 0)
    }

    /// Runs `params.epochs` passes over `examples`, shuffled each epoch with
    /// a generator seeded from `params.seed`.
    pub fn fit(&mut self, examples: &[(FeatureVector, bool)]) -> Result<()> {
        if examples.is_empty() {
            return Err(Error::Empty("training set has no examples".into()));
        }
        for (x, _) in examples {
            self.check_dim(x)?;
        }
        let ones = examples.iter().filter(|(_, y)| *y).count();
        if ones == 0 || ones == examples.len() {
            log::warn!(
                "training set contains a single label ({}); the machine will degenerate",
                u8::from(ones > 0)
            );
        }

        let mut rng = ChaCha8Rng::seed_from_u64(self.params.seed);
        let mut order: Vec<usize> = (0..examples.len()).collect();
        let mut outputs = vec![false; self.clauses.len()];
        for _ in 0..self.params.epochs {
            order.shuffle(&mut rng);
            for &i in &order {
                let (x, y) = &examples[i];
                self.update(x, *y, &mut outputs, &mut rng);
            }
        }
        Ok(())
    }

    fn update<R: Rng>(&mut self, x: &FeatureVector, y: bool, outputs: &mut [bool], rng: &mut R) {
        let mut vote = 0i64;
        for (out, c) in outputs.iter_mut().zip(&self.clauses) {
            *out = c.output(x, EvalMode::Training);
            if *out {
                vote += c.polarity().sign();
            }
        }
        let p = feedback_probability(vote, self.params.vote_target, y);
        let s = self.params.sensitivity;
        let negated = self.params.negated_literals;
        for (c, &out) in self.clauses.iter_mut().zip(outputs.iter()) {
            if rng.gen::<f64>() >= p {
                continue;
            }
            let recognize = (c.polarity() == Polarity::Positive) == y;
            if recognize {
                type_i(c, x, out, s, negated, rng);
            } else {
                type_ii(c, x, out);
            }
        }
    }
}
