//! Tsetlin machine: two-action automata, conjunctive clauses, the clause
//! vote and Type I / Type II reinforcement.
//!
//! A machine over `o` binary features holds `m` clauses. Each clause owns
//! `2o` automata, one per literal: indices `0..o` are the plain features
//! `x_k`, indices `o..2o` their negations. Clauses `0..m/2` vote positive,
//! clauses `m/2..m` vote negative.

mod automaton;
mod clause;
mod feedback;
mod io;
mod machine;

pub use automaton::{Action, AutomatonState};
pub use clause::{Clause, EvalMode, Literal, Polarity};
pub use feedback::feedback_probability;
pub(crate) use io::read_u32;
pub use io::MODEL_MAGIC;
pub use machine::{NegatedLiterals, TrainParams, TsetlinMachine};
