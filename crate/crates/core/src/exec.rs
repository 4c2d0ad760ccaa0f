//! Execution drivers for the exhaustive inner loops.
//!
//! With the `parallel` feature (the default) the drivers run on rayon;
//! without it they fall back to plain sequential loops. Results are
//! deterministic either way: `find_first` always reports the leftmost
//! match and `map_collect` preserves index order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Below this many items the parallel drivers run sequentially anyway.
#[cfg(feature = "parallel")]
const PAR_THRESHOLD: usize = 1 << 11;

#[cfg(feature = "parallel")]
pub(crate) fn all_of<F>(n: usize, pred: F) -> bool
where
    F: Fn(usize) -> bool + Sync + Send,
{
    if n < PAR_THRESHOLD {
        (0..n).all(pred)
    } else {
        (0..n).into_par_iter().all(pred)
    }
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn all_of<F>(n: usize, pred: F) -> bool
where
    F: Fn(usize) -> bool + Sync + Send,
{
    (0..n).all(pred)
}

#[cfg(feature = "parallel")]
pub(crate) fn map_collect<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    if n < PAR_THRESHOLD {
        (0..n).map(f).collect()
    } else {
        (0..n).into_par_iter().map(f).collect()
    }
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_collect<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    (0..n).map(f).collect()
}
