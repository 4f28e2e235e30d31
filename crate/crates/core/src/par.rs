//! Execution mode for the data-parallel loops (subset sums, batch checks).
//!
//! With the `parallel` feature (default) [`Exec::Parallel`] runs on the rayon
//! global pool. Without it every mode runs sequentially, so results never
//! depend on the feature set: reductions here are exact and associative.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// Folds `map` over `range` with an associative `reduce`.
    pub fn map_reduce<T, M, R, I>(self, range: Range<u64>, identity: I, map: M, reduce: R) -> T
    where
        T: Send,
        M: Fn(u64) -> T + Sync + Send,
        R: Fn(T, T) -> T + Sync + Send,
        I: Fn() -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => range.into_par_iter().map(map).reduce(&identity, &reduce),
            _ => range.map(map).fold(identity(), reduce),
        }
    }

    /// Maps `f` over `items`, preserving order.
    pub fn map_collect<S, T, F>(self, items: &[S], f: F) -> Vec<T>
    where
        S: Sync,
        T: Send,
        F: Fn(&S) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().map(f).collect(),
            _ => items.iter().map(f).collect(),
        }
    }
}
