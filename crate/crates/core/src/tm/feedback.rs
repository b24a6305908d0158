//! Type I and Type II feedback.
//!
//! | clause   | y = 1   | y = 0   |
//! |----------|---------|---------|
//! | positive | Type I  | Type II |
//! | negative | Type II | Type I  |
//!
//! Each clause receives its feedback with probability
//! `(T - clamp(v)) / 2T` when `y = 1` and `(T + clamp(v)) / 2T` when `y = 0`,
//! where `v` is the vote sum clamped to `[-T, T]`.

use rand::Rng;

use crate::text::FeatureVector;
use crate::tm::{Clause, NegatedLiterals};

/// Probability that a clause receives feedback for an example with label
/// `y`, given the raw vote sum and the vote target `T`.
pub fn feedback_probability(vote: i64, vote_target: u32, y: bool) -> f64 {
    let t = i64::from(vote_target);
    let v = vote.clamp(-t, t);
    let num = if y { t - v } else { t + v };
    num as f64 / (2 * t) as f64
}

/// Type I feedback: recognize frequent patterns.
///
/// If `output` is true, literals satisfied by `x` step toward Include with
/// probability `(s-1)/s` and unsatisfied ones step toward Exclude with
/// probability `1/s`. Otherwise every automaton steps toward Exclude with
/// probability `1/s`.
pub(crate) fn type_i<R: Rng + ?Sized>(
    clause: &mut Clause,
    x: &FeatureVector,
    output: bool,
    sensitivity: f64,
    negated: NegatedLiterals,
    rng: &mut R,
) {
    let reward_negated = negated == NegatedLiterals::Standard;
    let p_reward = (sensitivity - 1.0) / sensitivity;
    let p_weaken = 1.0 / sensitivity;
    let n = clause.states_per_action();
    let o = clause.vocab_size();
    let automata = clause.automata_mut();

    if !output {
        for a in automata.iter_mut() {
            if rng.gen::<f64>() < p_weaken {
                a.step_exclude();
            }
        }
        return;
    }

    for (slot, a) in automata.iter_mut().enumerate() {
        let satisfied = if slot < o {
            x.get(slot)
        } else {
            !x.get(slot - o)
        };
        if satisfied {
            if (slot < o || reward_negated) && rng.gen::<f64>() < p_reward {
                a.step_include(n);
            }
        } else if rng.gen::<f64>() < p_weaken {
            a.step_exclude();
        }
    }
}

/// Type II feedback: reject false matches.
///
/// Acts only when `output` is true. Every excluded literal that `x` does not
/// satisfy steps once toward Include, so that the clause will eventually
/// output 0 on `x`.
pub(crate) fn type_ii(clause: &mut Clause, x: &FeatureVector, output: bool) {
    if !output {
        return;
    }
    let n = clause.states_per_action();
    let o = clause.vocab_size();
    for (slot, a) in clause.automata_mut().iter_mut().enumerate() {
        let satisfied = if slot < o {
            x.get(slot)
        } else {
            !x.get(slot - o)
        };
        if !satisfied && !a.is_included(n) {
            a.step_include(n);
        }
    }
}
