use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: u64 = 100_000_000;
pub const DEFAULT_MAX_PROPOSITIONS: usize = 20;

/// Caps shared by every exhaustive search in the crate.
///
/// `budget` bounds the number of candidates (tables, maps, sentences, search
/// nodes) an operation may visit; exceeding it is reported as
/// [`Error::BoundExceeded`] instead of running unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub budget: u64,
    pub max_propositions: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            budget: DEFAULT_BUDGET,
            max_propositions: DEFAULT_MAX_PROPOSITIONS,
        }
    }
}

impl Limits {
    pub fn with_budget(budget: u64) -> Self {
        Limits {
            budget,
            ..Limits::default()
        }
    }

    pub(crate) fn check(&self, what: &str, required: u128) -> Result<()> {
        if required > u128::from(self.budget) {
            Err(Error::bound(what, required, self.budget))
        } else {
            Ok(())
        }
    }
}

/// `base^exp`, saturating at `u128::MAX`.
pub(crate) fn pow_sat(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
        if acc == u128::MAX {
            break;
        }
    }
    acc
}

pub(crate) fn factorial_sat(n: usize) -> u128 {
    (1..=n as u128).fold(1u128, |acc, k| acc.saturating_mul(k))
}
