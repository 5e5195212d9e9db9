//! Execution mode for batch work: data-parallel when the `parallel` feature
//! is enabled, sequential otherwise.

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// `Parallel` only takes effect with the `parallel` feature.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Maps `f` over `items`, preserving order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Maps `f` over `lo..hi`, preserving order.
    pub fn map_range<R, F>(self, lo: u64, hi: u64, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(u64) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return (lo..hi).into_par_iter().map(f).collect();
        }
        (lo..hi).map(f).collect()
    }

    /// Reduces `f` over `lo..hi` with `max`.
    pub fn max_range<F>(self, lo: u64, hi: u64, f: F) -> Option<u64>
    where
        F: Fn(u64) -> Option<u64> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return (lo..hi).into_par_iter().filter_map(f).max();
        }
        (lo..hi).filter_map(f).max()
    }

    /// Reduces `f` over `lo..hi` with `min`.
    pub fn min_range<F>(self, lo: u64, hi: u64, f: F) -> Option<u64>
    where
        F: Fn(u64) -> Option<u64> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return (lo..hi).into_par_iter().filter_map(f).min();
        }
        (lo..hi).filter_map(f).min()
    }
}
