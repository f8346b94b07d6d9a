//! Execution mode for the data-parallel kernels.
//!
//! With the `parallel` feature (on by default) [`Exec::Parallel`] dispatches
//! to rayon; without it every call runs sequentially regardless of mode.

/// How the inner loops of the checker and the closure kernels run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Maps `f` over `items`, preserving order.
    pub fn map<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Maps `f` over `0..n`, preserving order.
    pub fn map_range<U, F>(self, n: usize, f: F) -> Vec<U>
    where
        U: Send,
        F: Fn(usize) -> U + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return (0..n).into_par_iter().map(f).collect();
        }
        (0..n).map(f).collect()
    }

    /// Smallest index in `0..n` for which `f` returns `Some`, with its value.
    pub fn find_first<U, F>(self, n: usize, f: F) -> Option<(usize, U)>
    where
        U: Send,
        F: Fn(usize) -> Option<U> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return (0..n).into_par_iter().find_map_first(|i| f(i).map(|u| (i, u)));
        }
        (0..n).find_map(|i| f(i).map(|u| (i, u)))
    }

    /// Runs `f` for every index in `0..n`.
    pub fn for_each<F>(self, n: usize, f: F)
    where
        F: Fn(usize) + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            (0..n).into_par_iter().for_each(f);
            return;
        }
        (0..n).for_each(f)
    }
}

/// Runs `f` inside a rayon pool with `jobs` threads (or the global pool when
/// `jobs` is `None`).
pub fn with_jobs<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    if let Some(n) = jobs {
        if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            return pool.install(f);
        }
    }
    let _ = jobs;
    f()
}
