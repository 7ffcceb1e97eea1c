//! Direction sweeps, optionally spread over a thread pool. Results keep
//! the input order, so serial and parallel runs produce the same output.

use floatgeo_core::Result;
use rayon::prelude::*;

use crate::error::{CliError, CliResult};

pub fn sweep<I, T, F>(items: &[I], threads: usize, f: F) -> CliResult<Vec<T>>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> Result<T> + Sync,
{
    let results: Vec<Result<T>> = if threads <= 1 {
        items.iter().map(&f).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| CliError::Invalid(format!("cannot start {threads} threads: {e}")))?;
        pool.install(|| items.par_iter().map(&f).collect())
    };
    // first error in direction order, independent of scheduling
    results.into_iter().map(|r| r.map_err(CliError::from)).collect()
}
