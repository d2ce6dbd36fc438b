use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

/// Node-count budget for the enumeration kernels.
///
/// Budgets are counted in search nodes, not wall-clock time, so runs are
/// reproducible. The counter is atomic: concurrent scans share one budget
/// and the total charged is exact regardless of interleaving.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    /// Default node limit used by the CLI when none is given.
    pub const DEFAULT_LIMIT: u64 = 10_000_000;

    pub fn new(limit: u64) -> Self {
        Budget {
            limit,
            used: AtomicU64::new(0),
        }
    }

    /// Charge one search node; errors once the limit is exhausted.
    pub fn charge(&self) -> Result<()> {
        let prev = self.used.fetch_add(1, Ordering::Relaxed);
        if prev >= self.limit {
            Err(Error::BudgetExceeded { limit: self.limit })
        } else {
            Ok(())
        }
    }

    /// Charge `count` nodes at once.
    pub fn charge_many(&self, count: u64) -> Result<()> {
        let prev = self.used.fetch_add(count, Ordering::Relaxed);
        if prev.saturating_add(count) > self.limit {
            Err(Error::BudgetExceeded { limit: self.limit })
        } else {
            Ok(())
        }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(Self::DEFAULT_LIMIT)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhausts_at_limit() {
        let b = Budget::new(3);
        assert!(b.charge().is_ok());
        assert!(b.charge().is_ok());
        assert!(b.charge().is_ok());
        assert_eq!(b.charge(), Err(Error::BudgetExceeded { limit: 3 }));
        assert!(b.used() >= 3);
    }
}
