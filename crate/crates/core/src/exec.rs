//! Execution strategy for the data-parallel loops.
//!
//! Every batch operation in the crate takes an [`Execution`]. With the
//! `parallel` feature enabled, [`Execution::Parallel`] dispatches to rayon;
//! without it, both variants run on the calling thread. Results are always
//! collected in input order, so output never depends on the schedule.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether work will actually be spread over the rayon pool.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    pub fn map<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    pub fn map_range<U, F>(self, range: Range<u64>, f: F) -> Vec<U>
    where
        U: Send,
        F: Fn(u64) -> U + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return range.into_par_iter().map(f).collect();
        }
        range.map(f).collect()
    }

    /// Splits `range` into consecutive chunks of at most `chunk` values and
    /// maps each chunk. Chunk results come back in range order.
    pub fn map_chunks<U, F>(self, range: Range<u64>, chunk: u64, f: F) -> Vec<U>
    where
        U: Send,
        F: Fn(Range<u64>) -> U + Sync + Send,
    {
        let chunk = chunk.max(1);
        let len = range.end.saturating_sub(range.start);
        let n_chunks = len.div_ceil(chunk);
        let start = range.start;
        let end = range.end;
        self.map_range(0..n_chunks, |i| {
            let lo = start + i * chunk;
            f(lo..(lo + chunk).min(end))
        })
    }
}
