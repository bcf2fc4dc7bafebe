//! Sequential/parallel dispatch for the exhaustive sweeps.
//!
//! With the `parallel` feature (on by default) shards run on the rayon
//! global pool. Without it, [`Execution::Parallel`] quietly degrades to a
//! sequential loop, so callers never need their own `cfg` gates.

/// How a sweep runs its shards.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// Maps every shard and returns the results in shard order.
    pub fn map<T, R, F>(self, shards: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                shards.into_par_iter().map(f).collect()
            }
            _ => shards.into_iter().map(f).collect(),
        }
    }
}
