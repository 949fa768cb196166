//! Execution layer: rayon when the `parallel` feature is on, plain
//! iterators otherwise. Callers must only hand in order-independent
//! reductions so both configurations produce identical results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Runs `f` on a pool with the given worker count (`None` = default pool).
/// Without the `parallel` feature the closure simply runs on this thread.
#[cfg(feature = "parallel")]
pub fn with_threads<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match threads {
        None => f(),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .expect("thread pool")
            .install(f),
    }
}

/// Runs `f` on a pool with the given worker count (`None` = default pool).
/// Without the `parallel` feature the closure simply runs on this thread.
#[cfg(not(feature = "parallel"))]
pub fn with_threads<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    let _ = threads;
    f()
}

/// True iff some mask in `0..end` satisfies the predicate.
#[cfg(feature = "parallel")]
pub(crate) fn mask_any(end: u32, pred: impl Fn(u32) -> bool + Sync + Send) -> bool {
    (0..end).into_par_iter().any(pred)
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn mask_any(end: u32, pred: impl Fn(u32) -> bool + Sync + Send) -> bool {
    (0..end).any(pred)
}

/// Masks in `0..end` satisfying the predicate, in increasing order.
#[cfg(feature = "parallel")]
pub(crate) fn mask_filter(end: u32, pred: impl Fn(u32) -> bool + Sync + Send) -> Vec<u32> {
    (0..end).into_par_iter().filter(|&m| pred(m)).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn mask_filter(end: u32, pred: impl Fn(u32) -> bool + Sync + Send) -> Vec<u32> {
    (0..end).filter(|&m| pred(m)).collect()
}

/// Maps `f` over work units, preserving unit order in the output.
#[cfg(feature = "parallel")]
pub(crate) fn map_units<T: Sync, R: Send>(units: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    units.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_units<T: Sync, R: Send>(units: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    units.iter().map(f).collect()
}
