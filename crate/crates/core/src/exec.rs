//! Sequential or data-parallel execution of the hot loops.
//!
//! With the `parallel` feature (on by default) [`Strategy::Parallel`] runs
//! on the rayon global pool. Without it both strategies run sequentially,
//! so callers never need their own `cfg` switches.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

impl Strategy {
    /// Maps `f` over `items`, preserving order.
    pub fn map<T, R, F>(self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Strategy::Parallel => items.into_par_iter().map(f).collect(),
            _ => items.into_iter().map(f).collect(),
        }
    }

    /// Folds `0..len` into per-worker accumulators and merges them.
    pub fn fold_range<A, Init, Step, Merge>(self, len: usize, init: Init, step: Step, merge: Merge) -> A
    where
        A: Send,
        Init: Fn() -> A + Sync + Send,
        Step: Fn(A, usize) -> A + Sync + Send,
        Merge: Fn(A, A) -> A + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Strategy::Parallel => (0..len).into_par_iter().fold(&init, &step).reduce(&init, &merge),
            _ => {
                let _ = merge;
                (0..len).fold(init(), step)
            }
        }
    }
}
