//! Execution strategy for the data-parallel loops (rendering rows, batch
//! evaluation, seed sweeps).
//!
//! With the `parallel` feature (default) work is spread over the rayon
//! global pool; without it every loop runs on the calling thread. Results are
//! identical either way: parallel loops only ever write disjoint outputs and
//! all randomness is keyed by item index, never by scheduling order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

impl Execution {
    /// Maps `f` over `items`, preserving order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            Execution::Sequential => items.iter().map(f).collect(),
            #[cfg(feature = "parallel")]
            Execution::Parallel => items.par_iter().map(f).collect(),
        }
    }

    /// Like [`Execution::map`] but short-circuits on the first error (by
    /// index order in sequential mode, by any order in parallel mode).
    pub fn try_map<T, R, E, F>(self, items: &[T], f: F) -> Result<Vec<R>, E>
    where
        T: Sync,
        R: Send,
        E: Send,
        F: Fn(&T) -> Result<R, E> + Sync + Send,
    {
        match self {
            Execution::Sequential => items.iter().map(f).collect(),
            #[cfg(feature = "parallel")]
            Execution::Parallel => items.par_iter().map(f).collect(),
        }
    }

    /// Runs `f(chunk_index, chunk)` on consecutive `chunk_len`-sized chunks
    /// of `data`.
    pub fn try_for_each_chunk<T, E, F>(self, data: &mut [T], chunk_len: usize, f: F) -> Result<(), E>
    where
        T: Send,
        E: Send,
        F: Fn(usize, &mut [T]) -> Result<(), E> + Sync + Send,
    {
        match self {
            Execution::Sequential => data
                .chunks_mut(chunk_len)
                .enumerate()
                .try_for_each(|(i, c)| f(i, c)),
            #[cfg(feature = "parallel")]
            Execution::Parallel => data
                .par_chunks_mut(chunk_len)
                .enumerate()
                .try_for_each(|(i, c)| f(i, c)),
        }
    }
}
