//! Execution strategy for data-parallel inner loops.
//!
//! Work is split into fixed blocks; each block is mapped independently and
//! the per-block results are combined in index order. The schedule is the
//! same whether blocks run on rayon or sequentially, so floating-point
//! results are bit-identical for both modes.

/// How data-parallel loops are executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    /// Run blocks one after the other on the calling thread.
    Sequential,
    /// Run blocks on the rayon thread pool (falls back to sequential when
    /// the `parallel` feature is disabled).
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

const BLOCK: usize = 1024;

/// Maps `0..n` in blocks of 1024 and sums block results in index order.
///
/// `map` receives a half-open index range and returns the (sequentially
/// accumulated) partial sum for that range.
pub fn block_sum<F>(exec: Exec, n: usize, map: F) -> f64
where
    F: Fn(std::ops::Range<usize>) -> f64 + Sync + Send,
{
    let partials = block_map(exec, n, map);
    partials.iter().sum()
}

/// Maps index blocks to arbitrary values, preserving block order.
pub fn block_map<T, F>(exec: Exec, n: usize, map: F) -> Vec<T>
where
    T: Send,
    F: Fn(std::ops::Range<usize>) -> T + Sync + Send,
{
    let nblocks = n.div_ceil(BLOCK);
    let range_of = |b: usize| (b * BLOCK)..((b + 1) * BLOCK).min(n);
    match exec {
        Exec::Sequential => (0..nblocks).map(|b| map(range_of(b))).collect(),
        Exec::Parallel => {
            #[cfg(feature = "parallel")]
            {
                use rayon::prelude::*;
                (0..nblocks).into_par_iter().map(|b| map(range_of(b))).collect()
            }
            #[cfg(not(feature = "parallel"))]
            {
                (0..nblocks).map(|b| map(range_of(b))).collect()
            }
        }
    }
}

/// Maps each index `0..n` to a value, preserving index order.
pub fn map_indexed<T, F>(exec: Exec, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match exec {
        Exec::Sequential => (0..n).map(f).collect(),
        Exec::Parallel => {
            #[cfg(feature = "parallel")]
            {
                use rayon::prelude::*;
                (0..n).into_par_iter().map(f).collect()
            }
            #[cfg(not(feature = "parallel"))]
            {
                (0..n).map(f).collect()
            }
        }
    }
}
