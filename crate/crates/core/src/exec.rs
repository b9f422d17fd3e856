//! Deterministic execution helpers: fixed chunk plans, an optional
//! rayon-backed runner, and compensated accumulation.
//!
//! Results never depend on the worker count. Chunk boundaries are derived
//! from input sizes and the memory budget alone, per-chunk outputs are
//! merged in chunk order, and floating-point accumulation happens in a
//! fixed order, so a run with 1 worker is bit-identical to a run with 8.

use crate::error::{Error, Result};

/// Default scratch-memory budget: 4 GiB.
pub const DEFAULT_MEM_BUDGET: u64 = 4 << 30;

/// Chunk plans assume at most this many chunks are resident at once; the
/// per-chunk scratch allowance is `mem_budget / MAX_RESIDENT_CHUNKS`.
/// Worker pools are clamped to this size so peak memory stays in budget.
pub const MAX_RESIDENT_CHUNKS: u64 = 64;

/// Smallest per-chunk scratch allowance (bytes) that is still worth running.
/// Budgets too small to afford it produce a capacity error instead of
/// degenerate chunking.
pub(crate) const MIN_CHUNK_BYTES: u64 = 1 << 13;

/// Hard ceiling on the number of chunks in one plan.
pub(crate) const MAX_CHUNKS: u64 = 1 << 22;

/// Block length for scans over integer ranges ([1, n] membership scans,
/// tilted sums). Fixed so that block boundaries, and therefore rounding in
/// per-block float accumulators, never depend on the worker count.
pub(crate) const SCAN_BLOCK: u64 = 1 << 16;

/// Memory budget and worker count for one operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Resources {
    /// Scratch memory budget in bytes.
    pub mem_budget: u64,
    /// Worker threads: `0` uses all available parallelism, `1` runs
    /// in-thread, larger values use a dedicated pool of that size.
    pub workers: usize,
}

impl Default for Resources {
    fn default() -> Self {
        Resources {
            mem_budget: DEFAULT_MEM_BUDGET,
            workers: 0,
        }
    }
}

impl Resources {
    pub fn with_budget(mem_budget: u64) -> Self {
        Resources {
            mem_budget,
            ..Default::default()
        }
    }

    pub fn with_workers(workers: usize) -> Self {
        Resources {
            workers,
            ..Default::default()
        }
    }

    pub fn sequential() -> Self {
        Resources::with_workers(1)
    }

    /// Per-chunk scratch allowance, or a capacity error for hopeless budgets.
    pub(crate) fn chunk_bytes(&self, what: &'static str) -> Result<u64> {
        let bytes = self.mem_budget / MAX_RESIDENT_CHUNKS;
        if bytes < MIN_CHUNK_BYTES {
            return Err(Error::Capacity {
                what,
                required: MAX_RESIDENT_CHUNKS * MIN_CHUNK_BYTES,
                budget: self.mem_budget,
            });
        }
        Ok(bytes)
    }
}

/// Split the inclusive range `[lo, hi]` into contiguous spans of at most
/// `span` values, in ascending order.
pub(crate) fn plan_spans(lo: u64, hi: u64, span: u64) -> Vec<(u64, u64)> {
    debug_assert!(lo <= hi && span >= 1);
    let mut out = Vec::new();
    let mut start = lo;
    loop {
        let end = start.saturating_add(span - 1).min(hi);
        out.push((start, end));
        if end == hi {
            return out;
        }
        start = end + 1;
    }
}

/// Split `[lo, hi]` so that roughly `weight / weight_budget` chunks cover it.
/// The weight is whatever the caller will buffer per chunk (pair counts,
/// bitmap bits); the plan depends only on sizes and budget, never on workers.
pub(crate) fn plan_by_weight(
    lo: u64,
    hi: u64,
    weight: u128,
    weight_budget: u128,
    what: &'static str,
    mem_budget: u64,
) -> Result<Vec<(u64, u64)>> {
    debug_assert!(weight_budget >= 1);
    let chunks = (weight.div_ceil(weight_budget).max(1)) as u64;
    if chunks > MAX_CHUNKS {
        return Err(Error::Capacity {
            what,
            required: (weight / MAX_CHUNKS as u128).saturating_mul(MAX_RESIDENT_CHUNKS as u128)
                as u64,
            budget: mem_budget,
        });
    }
    let range = hi - lo + 1;
    let span = range.div_ceil(chunks.min(range));
    Ok(plan_spans(lo, hi, span))
}

/// Apply `f` to every chunk and return outputs in chunk order.
///
/// With the `parallel` feature the chunks run on a rayon pool sized by
/// `workers`; without it, or with `workers == 1`, they run in-thread. Either
/// way the output vector is ordered by chunk index.
#[cfg(feature = "parallel")]
pub(crate) fn map_chunks<I, T, F>(inputs: Vec<I>, workers: usize, f: F) -> Vec<T>
where
    I: Send,
    T: Send,
    F: Fn(I) -> T + Sync + Send,
{
    use rayon::prelude::*;
    match workers {
        1 => inputs.into_iter().map(f).collect(),
        0 => inputs.into_par_iter().map(f).collect(),
        w => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w.min(MAX_RESIDENT_CHUNKS as usize))
                .build()
                .expect("worker pool");
            pool.install(|| inputs.into_par_iter().map(f).collect())
        }
    }
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_chunks<I, T, F>(inputs: Vec<I>, _workers: usize, f: F) -> Vec<T>
where
    F: Fn(I) -> T,
{
    inputs.into_iter().map(f).collect()
}

/// Kahan compensated accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    #[inline]
    pub fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(self) -> f64 {
        self.sum
    }
}

/// Compensated total of already-ordered partial sums.
pub(crate) fn kahan_total<I: IntoIterator<Item = f64>>(parts: I) -> f64 {
    let mut acc = KahanSum::default();
    for p in parts {
        acc.add(p);
    }
    acc.value()
}
