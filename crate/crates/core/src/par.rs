//! Data-parallel helpers.
//!
//! With the `parallel` feature the helpers fan out over rayon's pool. Without
//! it they run the same closures in order on the calling thread. Output order
//! is the input order in both cases.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Whether this build fans work out over threads.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

#[cfg(feature = "parallel")]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_range<R, F>(range: Range<usize>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    range.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_range<R, F>(range: Range<usize>, f: F) -> Vec<R>
where
    F: Fn(usize) -> R,
{
    range.map(f).collect()
}

/// Applies `f(row_index, row)` to each `stride`-word row of `data`.
#[cfg(feature = "parallel")]
pub fn for_each_row_mut<F>(data: &mut [u64], stride: usize, f: F)
where
    F: Fn(usize, &mut [u64]) + Sync + Send,
{
    data.par_chunks_mut(stride)
        .enumerate()
        .for_each(|(i, row)| f(i, row));
}

#[cfg(not(feature = "parallel"))]
pub fn for_each_row_mut<F>(data: &mut [u64], stride: usize, f: F)
where
    F: Fn(usize, &mut [u64]),
{
    data.chunks_mut(stride)
        .enumerate()
        .for_each(|(i, row)| f(i, row));
}

/// Runs `f` on a dedicated pool of `threads` workers. Used by the benches to
/// compare one worker against many in the same process.
#[cfg(feature = "parallel")]
pub fn with_threads<R, F>(threads: usize, f: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .expect("thread pool")
        .install(f)
}

#[cfg(not(feature = "parallel"))]
pub fn with_threads<R, F>(_threads: usize, f: F) -> R
where
    F: FnOnce() -> R,
{
    f()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_keeps_order() {
        let v: Vec<usize> = (0..1000).collect();
        let out = map(&v, |x| x * 2);
        assert!(out.iter().enumerate().all(|(i, &x)| x == 2 * i));
        assert_eq!(map_range(0..5, |i| i + 1), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn single_thread_pool_matches() {
        let a = with_threads(1, || map_range(0..100, |i| i * i));
        let b = map_range(0..100, |i| i * i);
        assert_eq!(a, b);
    }
}
