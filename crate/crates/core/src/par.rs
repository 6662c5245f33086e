//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) [`Execution::Parallel`] runs on the
//! rayon pool; without it both modes run sequentially. Results never depend
//! on the mode: maps preserve order and reductions are over commutative
//! monoids.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether this build can actually run work in parallel.
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }
}

/// Order-preserving map over a slice.
pub fn map<T, R, F>(mode: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().map(f).collect(),
        _ => items.iter().map(f).collect(),
    }
}

/// Map every integer of `range` and fold the results with `combine`.
pub fn map_reduce<R, M, C, I>(mode: Execution, range: Range<u64>, identity: I, f: M, combine: C) -> R
where
    R: Send,
    I: Fn() -> R + Sync + Send,
    M: Fn(u64) -> R + Sync + Send,
    C: Fn(R, R) -> R + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        Execution::Parallel => range.into_par_iter().map(f).reduce(&identity, &combine),
        _ => range.map(f).fold(identity(), combine),
    }
}
