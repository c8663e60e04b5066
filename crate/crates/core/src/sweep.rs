// SPDX-License-Identifier: Apache-2.0

//! Deterministic partitioned sweeps.
//!
//! Populations are split into contiguous index ranges; each range maps to a
//! partial result and the partials merge in range order, so the outcome is
//! identical no matter how many workers ran or how they interleaved. With
//! the `parallel` feature (default) ranges run on rayon; without it, or with
//! `jobs = Some(1)`, the same ranges run on a plain sequential loop.

use std::ops::Range;

/// Split `0..total` into ranges of at most `chunk` items.
pub fn chunk_ranges(total: u64, chunk: u64) -> Vec<Range<u64>> {
    assert!(chunk > 0, "chunk size must be positive");
    let mut ranges = Vec::new();
    let mut start = 0;
    while start < total {
        let end = (start + chunk).min(total);
        ranges.push(start..end);
        start = end;
    }
    ranges
}

/// Map every range through `work`, returning results in range order.
///
/// `jobs = None` uses the default worker count (all available parallelism),
/// `Some(1)` forces the sequential path, `Some(w)` caps the pool at `w`.
pub fn map_ranges<T, F>(ranges: Vec<Range<u64>>, jobs: Option<usize>, work: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<u64>) -> T + Sync + Send,
{
    if jobs == Some(1) {
        return ranges.into_iter().map(work).collect();
    }
    run_ranges(ranges, jobs, work)
}

#[cfg(feature = "parallel")]
fn run_ranges<T, F>(ranges: Vec<Range<u64>>, jobs: Option<usize>, work: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<u64>) -> T + Sync + Send,
{
    use rayon::prelude::*;
    match jobs {
        None => ranges.into_par_iter().map(work).collect(),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .expect("failed to build worker pool");
            pool.install(|| ranges.into_par_iter().map(work).collect())
        }
    }
}

#[cfg(not(feature = "parallel"))]
fn run_ranges<T, F>(ranges: Vec<Range<u64>>, _jobs: Option<usize>, work: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<u64>) -> T + Sync + Send,
{
    ranges.into_iter().map(work).collect()
}
