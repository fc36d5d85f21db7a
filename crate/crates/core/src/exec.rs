//! Execution strategy for data-parallel sweeps.
//!
//! Sweeps over many values of `C` (tables, batch certificate checks) are
//! embarrassingly parallel. With the `parallel` feature (on by default) they
//! run on the rayon global pool; without it, or when [`Exec::Sequential`] is
//! requested, they run on the calling thread. Output order always matches
//! input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    /// Use rayon when the `parallel` feature is enabled, otherwise sequential.
    #[default]
    Parallel,
    Sequential,
}

impl Exec {
    /// Whether this strategy will actually fan out across threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Order-preserving map over a slice.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Order-preserving map over an inclusive `u64` range.
    pub fn map_range<R, F>(self, from: u64, to: u64, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(u64) -> R + Sync + Send,
    {
        if from > to {
            return Vec::new();
        }
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            return (from..=to).into_par_iter().map(f).collect();
        }
        (from..=to).map(f).collect()
    }
}

pub fn current_num_threads() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}
