//! Chunk-level parallelism with a sequential fallback.
//!
//! With the `parallel` feature, chunks are mapped on a rayon pool; without it
//! (or with one job) they are mapped in order on the calling thread. Results
//! always come back in chunk order, so callers merge them deterministically.

/// Worker count for exhaustive searches. `0` means "rayon's default".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Jobs(pub usize);

impl Jobs {
    pub const SERIAL: Jobs = Jobs(1);

    pub fn is_serial(self) -> bool {
        self.0 == 1 || !cfg!(feature = "parallel")
    }
}

impl Default for Jobs {
    fn default() -> Self {
        Jobs::SERIAL
    }
}

/// Maps `f` over `chunks`, returning results in input order.
pub fn map_chunks<T, R, F>(jobs: Jobs, chunks: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    if jobs.is_serial() {
        return chunks.into_iter().map(f).collect();
    }
    parallel::map_chunks(jobs, chunks, f)
}

#[cfg(feature = "parallel")]
mod parallel {
    use rayon::prelude::*;

    use super::Jobs;

    pub(super) fn map_chunks<T, R, F>(jobs: Jobs, chunks: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        let run = || chunks.into_par_iter().map(&f).collect::<Vec<_>>();
        if jobs.0 == 0 {
            return run();
        }
        match rayon::ThreadPoolBuilder::new().num_threads(jobs.0).build() {
            Ok(pool) => pool.install(run),
            // Could not spawn workers; the global pool gives the same result.
            Err(_) => run(),
        }
    }
}

#[cfg(not(feature = "parallel"))]
mod parallel {
    use super::Jobs;

    pub(super) fn map_chunks<T, R, F>(_jobs: Jobs, chunks: Vec<T>, f: F) -> Vec<R>
    where
        F: Fn(T) -> R,
    {
        chunks.into_iter().map(f).collect()
    }
}
