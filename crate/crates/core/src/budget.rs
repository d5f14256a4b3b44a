//! Resource caps shared by the decision procedures.

use crate::error::{Error, Result};

/// Environment variable that overrides [`Budget::max_states`].
pub const BUDGET_ENV: &str = "NUCA_BUDGET";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Cap on explored automaton states (determinized subsets, reachable sets, pair states).
    pub max_states: usize,
    /// Cap on the number of entries in any materialized rule table.
    pub max_table: usize,
    /// Cap on exhaustive enumerations (oracles, context sweeps).
    pub max_enumeration: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_states: 1 << 20,
            max_table: 1 << 24,
            max_enumeration: 1 << 26,
        }
    }
}

impl Budget {
    /// Default budget with `max_states` taken from `NUCA_BUDGET` when it parses.
    pub fn from_env() -> Budget {
        let mut b = Budget::default();
        if let Some(n) = std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            b.max_states = n;
        }
        b
    }

    pub fn check_states(&self, what: &'static str, n: usize) -> Result<()> {
        if n > self.max_states {
            return Err(Error::budget(what, n as u128, self.max_states as u128));
        }
        Ok(())
    }

    pub fn check_table(&self, what: &'static str, n: u128) -> Result<()> {
        if n > self.max_table as u128 {
            return Err(Error::budget(what, n, self.max_table as u128));
        }
        Ok(())
    }

    pub fn check_enumeration(&self, what: &'static str, n: u128) -> Result<()> {
        if n > self.max_enumeration as u128 {
            return Err(Error::budget(what, n, self.max_enumeration as u128));
        }
        Ok(())
    }
}

/// `base^exp` without overflow; saturates at `u128::MAX`.
pub(crate) fn pow_sat(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}
