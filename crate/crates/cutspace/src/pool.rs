//! Worker pool for suite instances.

use std::sync::OnceLock;

use rayon::{ThreadPool, ThreadPoolBuilder};

pub const WORKERS_VAR: &str = "CUTSPACE_WORKERS";

/// Pool width: `CUTSPACE_WORKERS` when it is a positive integer, otherwise
/// the number of logical cores.
pub fn workers() -> usize {
    std::env::var(WORKERS_VAR)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn pool() -> &'static ThreadPool {
    static POOL: OnceLock<ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| ThreadPoolBuilder::new().num_threads(workers()).build().expect("worker pool starts"))
}

pub fn install<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    pool().install(f)
}
