//! Execution policy for the exhaustive searches.
//!
//! Every search is split into chunks that are visited in index order. The
//! parallel path uses rayon's `find_map_first`, so the chunk that wins is the
//! same one the sequential path would stop at.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Default cap on candidates examined by one solver call.
pub const DEFAULT_BUDGET: u64 = 1 << 26;

/// Environment variable read by the CLI to override [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "GAPRED_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Parallelism {
    Sequential,
    /// Uses rayon when the `parallel` feature is compiled in, otherwise
    /// behaves exactly like `Sequential`.
    #[default]
    Parallel,
}

impl Parallelism {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Parallelism::Parallel
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    pub budget: u64,
    pub parallelism: Parallelism,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { budget: DEFAULT_BUDGET, parallelism: Parallelism::default() }
    }
}

impl SolveOptions {
    pub fn sequential() -> Self {
        SolveOptions { parallelism: Parallelism::Sequential, ..Default::default() }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    /// Fails with `BudgetExceeded` when `required` exceeds the budget.
    pub fn check(&self, required: u128) -> crate::Result<()> {
        if required > self.budget as u128 {
            Err(crate::Error::budget(required, self.budget))
        } else {
            Ok(())
        }
    }
}

/// First `Some` over chunk indices `0..chunks`, in index order.
pub fn find_map_first<T, F>(chunks: u64, par: Parallelism, f: F) -> Option<T>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if par.is_parallel() && chunks > 1 {
        return (0..chunks).into_par_iter().find_map_first(f);
    }
    let _ = par;
    (0..chunks).find_map(f)
}

/// Maps every chunk index and collects the results in index order.
pub fn map_collect<T, F>(chunks: usize, par: Parallelism, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if par.is_parallel() && chunks > 1 {
        return (0..chunks).into_par_iter().map(f).collect();
    }
    let _ = par;
    (0..chunks).map(f).collect()
}
