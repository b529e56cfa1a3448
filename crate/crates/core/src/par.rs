//! Execution policy for the data-parallel loops (basis columns, state
//! enumeration, per-component normal forms).
//!
//! With the `parallel` feature the loops run on the rayon pool; without it
//! [`Exec::Parallel`] silently falls back to the sequential path. Results do
//! not depend on the policy.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
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
    /// `(0..n).map(f).collect()` in index order.
    pub(crate) fn map_range<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                (0..n).into_par_iter().map(f).collect()
            }
            _ => (0..n).map(f).collect(),
        }
    }

    /// Fold `0..n` into per-worker accumulators and merge them. `merge` must
    /// be associative and commutative for the result to be policy-independent.
    #[cfg_attr(not(feature = "parallel"), allow(unused_variables))]
    pub(crate) fn fold_range<A, I, F, M>(self, n: usize, init: I, fold: F, merge: M) -> A
    where
        A: Send,
        I: Fn() -> A + Sync + Send,
        F: Fn(A, usize) -> A + Sync + Send,
        M: Fn(A, A) -> A + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                (0..n).into_par_iter().fold(&init, &fold).reduce(&init, &merge)
            }
            _ => (0..n).fold(init(), fold),
        }
    }
}
