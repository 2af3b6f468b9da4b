//! Thread-pool sizing shared by the parallel oracles.

use std::sync::OnceLock;

/// Environment variable that caps internal parallelism.
pub const THREADS_ENV: &str = "FLAGCERT_THREADS";

/// Runs `f` inside a rayon pool sized by `FLAGCERT_THREADS` (if set).
pub fn install<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    static POOL: OnceLock<Option<rayon::ThreadPool>> = OnceLock::new();
    let pool = POOL.get_or_init(|| {
        let n = std::env::var(THREADS_ENV)
            .ok()?
            .trim()
            .parse::<usize>()
            .ok()?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .ok()
    });
    match pool {
        Some(p) => p.install(f),
        None => f(),
    }
}
