//! Order-preserving data-parallel map, with a sequential fallback.
//!
//! With the `parallel` feature (default) work runs on rayon; without it, or with
//! [`Execution::Sequential`], items are processed in order on the calling thread. Output
//! order always matches input order.

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Worker pool of the given size; `None` uses one worker per logical core.
    #[default]
    Parallel,
    Jobs(usize),
}

impl Execution {
    pub fn from_jobs(jobs: Option<usize>) -> Self {
        match jobs {
            Some(1) => Execution::Sequential,
            Some(n) if n > 1 => Execution::Jobs(n),
            _ => Execution::Parallel,
        }
    }
}

pub fn par_map<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        Execution::Sequential => items.iter().map(f).collect(),
        Execution::Parallel => parallel_map(items, f),
        Execution::Jobs(n) => with_pool(n, || parallel_map(items, f)),
    }
}

#[cfg(feature = "parallel")]
fn parallel_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
fn with_pool<R: Send>(n: usize, op: impl FnOnce() -> R + Send) -> R {
    match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
        Ok(pool) => pool.install(op),
        Err(_) => op(),
    }
}

#[cfg(not(feature = "parallel"))]
fn with_pool<R: Send>(_n: usize, op: impl FnOnce() -> R + Send) -> R {
    op()
}
