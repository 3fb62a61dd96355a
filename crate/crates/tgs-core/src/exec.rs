//! Execution strategy for the data-parallel sweeps (raster nodes, ray
//! fans, randomized suites). With the `parallel` feature the work runs on
//! a rayon pool whose size can be capped with the `TGS_THREADS`
//! environment variable; without it everything runs sequentially. Results
//! are keyed by position, so both paths produce identical output.

pub(crate) fn map_seq<T, F>(count: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..count).map(f).collect()
}

#[cfg(feature = "parallel")]
mod pool {
    use std::sync::OnceLock;

    static POOL: OnceLock<Option<rayon::ThreadPool>> = OnceLock::new();

    /// Dedicated pool honouring `TGS_THREADS`; `None` means use the
    /// global rayon pool.
    pub(super) fn get() -> Option<&'static rayon::ThreadPool> {
        POOL.get_or_init(|| {
            let threads: usize = std::env::var("TGS_THREADS")
                .ok()
                .and_then(|s| s.trim().parse().ok())
                .filter(|&n| n > 0)?;
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .ok()
        })
        .as_ref()
    }
}

#[cfg(feature = "parallel")]
pub(crate) fn map<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    let work = || (0..count).into_par_iter().map(&f).collect();
    match pool::get() {
        Some(pool) => pool.install(work),
        None => work(),
    }
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    map_seq(count, f)
}
