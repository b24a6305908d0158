use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Action {
    Exclude,
    Include,
}

/// State of a two-action Tsetlin automaton with `N` states per action.
///
/// Values `1..=N` select Exclude, `N+1..=2N` select Include. Both ends
/// saturate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AutomatonState(u16);

impl AutomatonState {
    pub fn new(value: u16, states_per_action: u16) -> Result<Self> {
        if value == 0 || u32::from(value) > 2 * u32::from(states_per_action) {
            return Err(Error::param(format!(
                "automaton state {value} outside [1, {}]",
                2 * u32::from(states_per_action)
            )));
        }
        Ok(AutomatonState(value))
    }

    /// Weakest Exclude state, `N`.
    pub fn boundary(states_per_action: u16) -> Self {
        AutomatonState(states_per_action)
    }

    pub(crate) const fn from_raw(value: u16) -> Self {
        AutomatonState(value)
    }

    pub fn value(self) -> u16 {
        self.0
    }

    #[inline]
    pub fn is_included(self, states_per_action: u16) -> bool {
        self.0 > states_per_action
    }

    pub fn action(self, states_per_action: u16) -> Action {
        if self.is_included(states_per_action) {
            Action::Include
        } else {
            Action::Exclude
        }
    }

    /// One step toward (deeper) Include.
    #[inline]
    pub fn step_include(&mut self, states_per_action: u16) {
        if u32::from(self.0) < 2 * u32::from(states_per_action) {
            self.0 += 1;
        }
    }

    /// One step toward (deeper) Exclude.
    #[inline]
    pub fn step_exclude(&mut self) {
        if self.0 > 1 {
            self.0 -= 1;
        }
    }
}
