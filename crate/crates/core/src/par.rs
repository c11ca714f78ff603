//! Data-parallel kernels. With the `parallel` feature (default) these fan
//! out over rayon; without it they fall back to plain sequential iterators.
//! Results are order-preserving either way, so output never depends on the
//! worker count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub(crate) fn map_collect<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_collect<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub(crate) fn find_first<T, F>(items: &[T], pred: F) -> Option<&T>
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    items.par_iter().find_first(|x| pred(x))
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn find_first<T, F>(items: &[T], pred: F) -> Option<&T>
where
    F: Fn(&T) -> bool,
{
    items.iter().find(|x| pred(x))
}

/// Caps the global worker pool. A no-op without the `parallel` feature, or
/// once any parallel work has already run.
pub fn configure_workers(num_threads: usize) {
    #[cfg(feature = "parallel")]
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(num_threads)
            .build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = num_threads;
}
