//! Data-parallel execution helpers.
//!
//! With the default `parallel` feature, [`map_collect`] fans work out over a
//! rayon thread pool; without it, the same entry point degrades to a
//! sequential loop. [`map_collect_seq`] is always sequential so callers (and
//! benchmarks) can compare both code paths in a single build.
//!
//! Output order always matches input order, so parallel execution never
//! changes results for pure mapping functions.

#[cfg(feature = "parallel")]
pub fn map_collect<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_collect<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    map_collect_seq(items, f)
}

/// Sequential reference implementation of [`map_collect`].
pub fn map_collect_seq<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}
