//! Data-parallel driving helpers with a sequential fallback.
//!
//! Every search in this crate reduces with order-independent merges (least
//! index wins, set union), so results are identical with and without the
//! `parallel` feature and for any thread count; only wall time changes.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Least-index semantics: returns `f(i)` for the smallest `i` where it is
/// `Some`, scanning `0..n`.
#[cfg(feature = "parallel")]
pub(crate) fn find_map_first<T: Send>(
    n: usize,
    f: impl Fn(usize) -> Option<T> + Sync + Send,
) -> Option<T> {
    (0..n).into_par_iter().find_map_first(f)
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn find_map_first<T: Send>(
    n: usize,
    f: impl Fn(usize) -> Option<T> + Sync + Send,
) -> Option<T> {
    (0..n).find_map(f)
}

/// Indexed map; output order matches input order.
#[cfg(feature = "parallel")]
pub(crate) fn map_indexed<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_indexed<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    (0..n).map(f).collect()
}

/// Fallible indexed map.
#[cfg(feature = "parallel")]
pub(crate) fn try_map_indexed<T: Send>(
    n: usize,
    f: impl Fn(usize) -> crate::error::Result<T> + Sync + Send,
) -> crate::error::Result<Vec<T>> {
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn try_map_indexed<T: Send>(
    n: usize,
    f: impl Fn(usize) -> crate::error::Result<T> + Sync + Send,
) -> crate::error::Result<Vec<T>> {
    (0..n).map(f).collect()
}
