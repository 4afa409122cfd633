//! Partitioned execution of exhaustive scans.
//!
//! Scans are split into disjoint index chunks. Results are merged by index,
//! so the answer never depends on whether rayon is used.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// Environment variable that overrides the default search budget.
pub const BUDGET_ENV: &str = "DELPEZZO_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parallelism {
    Sequential,
    /// Uses rayon when the `parallel` feature is on, else runs sequentially.
    Parallel,
}

impl Default for Parallelism {
    fn default() -> Self {
        Parallelism::Parallel
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub budget: u128,
    pub parallelism: Parallelism,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { budget: DEFAULT_BUDGET, parallelism: Parallelism::default() }
    }
}

impl SearchConfig {
    pub fn sequential() -> Self {
        SearchConfig { parallelism: Parallelism::Sequential, ..Default::default() }
    }

    pub fn with_budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }

    /// Default config with the budget taken from `DELPEZZO_BUDGET` if set.
    pub fn from_env() -> Result<Self> {
        let mut cfg = SearchConfig::default();
        if let Ok(v) = std::env::var(BUDGET_ENV) {
            cfg.budget = v
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("{BUDGET_ENV}={v:?} is not an integer")))?;
        }
        Ok(cfg)
    }

    pub fn check(&self, candidates: u128) -> Result<()> {
        if candidates > self.budget {
            Err(Error::BudgetExceeded { candidates, budget: self.budget })
        } else {
            Ok(())
        }
    }
}

/// `f` applied to `0..n`, returning the result at the least index for which
/// it is `Some`.
pub fn find_map_first<T, F>(n: u64, parallelism: Parallelism, f: F) -> Option<T>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync + Send,
{
    match parallelism {
        #[cfg(feature = "parallel")]
        Parallelism::Parallel => (0..n).into_par_iter().find_map_first(f),
        _ => (0..n).find_map(f),
    }
}

/// Sum of `f` over `0..n`.
pub fn sum<F>(n: u64, parallelism: Parallelism, f: F) -> u64
where
    F: Fn(u64) -> u64 + Sync + Send,
{
    match parallelism {
        #[cfg(feature = "parallel")]
        Parallelism::Parallel => (0..n).into_par_iter().map(f).sum(),
        _ => (0..n).map(f).sum(),
    }
}

/// `f` over `0..n`, collected in index order.
pub fn map_collect<T, F>(n: u64, parallelism: Parallelism, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    match parallelism {
        #[cfg(feature = "parallel")]
        Parallelism::Parallel => (0..n).into_par_iter().map(f).collect(),
        _ => (0..n).map(f).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_hit_is_global_minimum() {
        for par in [Parallelism::Sequential, Parallelism::Parallel] {
            let hit = find_map_first(1_000_000, par, |i| (i % 7919 == 7918).then_some(i));
            assert_eq!(hit, Some(7918));
            assert_eq!(find_map_first(1000, par, |_| None::<u64>), None);
            assert_eq!(sum(1001, par, |i| i), 500_500);
            assert_eq!(map_collect(5, par, |i| i * i), vec![0, 1, 4, 9, 16]);
        }
    }

    #[test]
    fn budget_guard() {
        let cfg = SearchConfig::default().with_budget(10);
        assert!(cfg.check(10).is_ok());
        assert!(matches!(cfg.check(11), Err(Error::BudgetExceeded { candidates: 11, budget: 10 })));
    }
}
