//! Resource ceilings for the exhaustive enumerators.

use crate::error::{Error, Result};

/// Ceilings applied before an enumeration starts. They are configuration,
/// not invariants: callers raise them when they know the cost.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest family (words, forests) an enumerator will walk.
    pub max_objects: u128,
    /// Largest n for sums over the symmetric group.
    pub max_perm_n: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_objects: 10_000_000,
            max_perm_n: 10,
        }
    }
}

impl Limits {
    pub fn unbounded() -> Self {
        Limits {
            max_objects: u128::MAX,
            max_perm_n: usize::MAX,
        }
    }

    pub fn with_max_objects(mut self, max_objects: u128) -> Self {
        self.max_objects = max_objects;
        self
    }

    pub(crate) fn check(&self, what: &'static str, count: u128) -> Result<()> {
        if count > self.max_objects {
            return Err(Error::GuardExceeded {
                what,
                count,
                ceiling: self.max_objects,
            });
        }
        Ok(())
    }

    pub(crate) fn check_perm(&self, n: usize) -> Result<()> {
        if n > self.max_perm_n {
            return Err(Error::GuardExceeded {
                what: "permutations of [n]",
                count: n as u128,
                ceiling: self.max_perm_n as u128,
            });
        }
        Ok(())
    }
}

/// |Q_n(k)| = prod_{i<n} (ik + 1), saturating.
pub fn stirling_count(n: usize, k: usize) -> u128 {
    (0..n as u128).fold(1u128, |acc, i| acc.saturating_mul(i * k as u128 + 1))
}
