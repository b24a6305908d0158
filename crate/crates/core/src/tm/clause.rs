use std::fmt;

use crate::error::{Error, Result};
use crate::text::{FeatureVector, Vocabulary};
use crate::tm::AutomatonState;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Polarity {
    Positive,
    Negative,
}

impl Polarity {
    pub fn sign(self) -> i64 {
        match self {
            Polarity::Positive => 1,
            Polarity::Negative => -1,
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Polarity::Positive => "+",
            Polarity::Negative => "-",
        })
    }
}

/// How a clause with no included literals evaluates.
///
/// During training an empty clause outputs 1 so that Type I feedback can
/// grow it; for inference and novelty scoring it outputs 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalMode {
    Training,
    Inference,
}

/// A literal: feature `feature`, plain or negated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub feature: usize,
    pub negated: bool,
}

impl Literal {
    #[inline]
    pub fn is_satisfied(self, x: &FeatureVector) -> bool {
        x.get(self.feature) != self.negated
    }
}

/// Conjunction over the literals whose automata currently select Include.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    polarity: Polarity,
    states_per_action: u16,
    automata: Vec<AutomatonState>,
}

impl Clause {
    /// Fresh clause with every automaton at the weakest Exclude state.
    pub fn new(polarity: Polarity, vocab_size: usize, states_per_action: u16) -> Self {
        Clause {
            polarity,
            states_per_action,
            automata: vec![AutomatonState::boundary(states_per_action); 2 * vocab_size],
        }
    }

    pub fn from_states(
        polarity: Polarity,
        states_per_action: u16,
        automata: Vec<AutomatonState>,
    ) -> Result<Self> {
        if !automata.len().is_multiple_of(2) {
            return Err(Error::param("clause needs an even number of automata"));
        }
        for a in &automata {
            AutomatonState::new(a.value(), states_per_action)?;
        }
        Ok(Clause {
            polarity,
            states_per_action,
            automata,
        })
    }

    /// Builds a clause that includes exactly `literals` (at state `N+1`);
    /// everything else sits at `N`.
    pub fn with_literals(
        polarity: Polarity,
        vocab_size: usize,
        states_per_action: u16,
        literals: &[Literal],
    ) -> Result<Self> {
        let mut c = Clause::new(polarity, vocab_size, states_per_action);
        for lit in literals {
            if lit.feature >= vocab_size {
                return Err(Error::DimensionMismatch {
                    expected: vocab_size,
                    got: lit.feature + 1,
                });
            }
            let i = c.literal_slot(*lit);
            c.automata[i] = AutomatonState::from_raw(states_per_action + 1);
        }
        Ok(c)
    }

    pub fn polarity(&self) -> Polarity {
        self.polarity
    }

    pub fn states_per_action(&self) -> u16 {
        self.states_per_action
    }

    pub fn vocab_size(&self) -> usize {
        self.automata.len() / 2
    }

    pub fn automata(&self) -> &[AutomatonState] {
        &self.automata
    }

    pub(crate) fn automata_mut(&mut self) -> &mut [AutomatonState] {
        &mut self.automata
    }

    #[inline]
    pub(crate) fn literal_slot(&self, lit: Literal) -> usize {
        if lit.negated {
            self.vocab_size() + lit.feature
        } else {
            lit.feature
        }
    }

    pub fn is_included(&self, lit: Literal) -> bool {
        self.automata[self.literal_slot(lit)].is_included(self.states_per_action)
    }

    /// Included literals ordered by feature index, plain before negated.
    pub fn included_literals(&self) -> Vec<Literal> {
        let o = self.vocab_size();
        let n = self.states_per_action;
        let mut out = Vec::new();
        for k in 0..o {
            if self.automata[k].is_included(n) {
                out.push(Literal {
                    feature: k,
                    negated: false,
                });
            }
            if self.automata[o + k].is_included(n) {
                out.push(Literal {
                    feature: k,
                    negated: true,
                });
            }
        }
        out
    }

    pub fn include_count(&self) -> usize {
        let n = self.states_per_action;
        self.automata.iter().filter(|a| a.is_included(n)).count()
    }

    pub fn is_empty(&self) -> bool {
        let n = self.states_per_action;
        !self.automata.iter().any(|a| a.is_included(n))
    }

    /// Inference output. An empty clause outputs `false`.
    pub fn evaluate(&self, x: &FeatureVector) -> Result<bool> {
        self.check_dim(x)?;
        Ok(self.output(x, EvalMode::Inference))
    }

    pub(crate) fn check_dim(&self, x: &FeatureVector) -> Result<()> {
        if x.len() != self.vocab_size() {
            return Err(Error::DimensionMismatch {
                expected: self.vocab_size(),
                got: x.len(),
            });
        }
        Ok(())
    }

    /// Clause output without a dimension check.
    pub(crate) fn output(&self, x: &FeatureVector, mode: EvalMode) -> bool {
        let o = self.vocab_size();
        let n = self.states_per_action;
        let (plain, negated) = self.automata.split_at(o);
        let mut any = false;
        for (k, &xk) in x.bits().iter().enumerate() {
            if plain[k].is_included(n) {
                if !xk {
                    return false;
                }
                any = true;
            }
            if negated[k].is_included(n) {
                if xk {
                    return false;
                }
                any = true;
            }
        }
        any || mode == EvalMode::Training
    }

    /// Included literals mapped to `(term, negated)` pairs.
    pub fn literal_terms(&self, vocab: &Vocabulary) -> Result<Vec<(String, bool)>> {
        if vocab.len() != self.vocab_size() {
            return Err(Error::DimensionMismatch {
                expected: self.vocab_size(),
                got: vocab.len(),
            });
        }
        Ok(self
            .included_literals()
            .into_iter()
            .map(|l| (vocab.terms()[l.feature].clone(), l.negated))
            .collect())
    }
}
