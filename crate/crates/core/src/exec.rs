//! Data-parallel execution of independent trials and enumeration shards.
//!
//! With the `parallel` feature (default) work is spread over the rayon
//! global pool; without it every helper runs sequentially. Results are
//! always returned in index order, so outputs are identical either way.

/// How independent work items are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// `Parallel` when the crate was built with rayon, else `Sequential`.
    pub fn available() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }

    /// Evaluates `f(0..n)` and returns results in index order.
    pub fn map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                (0..n).into_par_iter().map(f).collect()
            }
            _ => (0..n).map(f).collect(),
        }
    }

    /// Splits `0..total` into contiguous chunks and maps each chunk.
    pub fn map_chunks<T, F>(self, total: u64, chunk: u64, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(std::ops::Range<u64>) -> T + Sync + Send,
    {
        let chunk = chunk.max(1);
        let count = total.div_ceil(chunk) as usize;
        self.map(count, |i| {
            let start = i as u64 * chunk;
            f(start..(start + chunk).min(total))
        })
    }
}

/// Configures the global pool from `PBLOCK_THREADS`, if set. Safe to call
/// more than once; later calls are ignored.
pub fn init_thread_pool_from_env() {
    #[cfg(feature = "parallel")]
    if let Some(n) = std::env::var("PBLOCK_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

/// Per-trial seed: `seed XOR trial`.
pub fn trial_seed(seed: u64, trial: usize) -> u64 {
    seed ^ trial as u64
}
