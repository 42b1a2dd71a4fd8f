//! Worker pools for the data-parallel stages.
//!
//! With the `parallel` feature disabled every [`Workers`] runs on the calling
//! thread. The ordering of results never depends on the worker count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::edges::{extract_edges_banded, EdgeSet};
use crate::image::BinaryImage;

/// Bands handed to each worker by [`Workers::extract_edges`].
const BANDS_PER_WORKER: usize = 4;

/// A fixed-size set of workers.
pub struct Workers {
    count: usize,
    #[cfg(feature = "parallel")]
    pool: Option<rayon::ThreadPool>,
}

impl std::fmt::Debug for Workers {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Workers").field("count", &self.count).finish()
    }
}

impl Default for Workers {
    /// One worker per available core (rayon's global pool).
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        {
            Self {
                count: rayon::current_num_threads(),
                pool: None,
            }
        }
        #[cfg(not(feature = "parallel"))]
        {
            Self::sequential()
        }
    }
}

impl Workers {
    /// Runs everything on the calling thread.
    pub fn sequential() -> Self {
        Self {
            count: 1,
            #[cfg(feature = "parallel")]
            pool: None,
        }
    }

    /// A dedicated pool of `count` threads. `count <= 1` is sequential, as is
    /// any count when built without the `parallel` feature.
    pub fn new(count: usize) -> Result<Self, WorkerError> {
        if count <= 1 {
            return Ok(Self::sequential());
        }
        #[cfg(feature = "parallel")]
        {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(count)
                .build()
                .map_err(|e| WorkerError(e.to_string()))?;
            Ok(Self {
                count,
                pool: Some(pool),
            })
        }
        #[cfg(not(feature = "parallel"))]
        {
            Ok(Self::sequential())
        }
    }

    /// Number of threads work is spread over.
    pub fn count(&self) -> usize {
        self.count
    }

    pub fn is_sequential(&self) -> bool {
        self.count <= 1
    }

    pub fn extract_edges(&self, img: &BinaryImage) -> EdgeSet {
        extract_edges_banded(img, self.count * BANDS_PER_WORKER, self)
    }

    /// Maps `f` over `items`, returning results in input order.
    pub fn map_ordered<'a, T, R, F>(&self, items: &'a [T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&'a T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if !self.is_sequential() {
            return self.install(|| items.par_iter().map(&f).collect());
        }
        items.iter().map(f).collect()
    }

    /// Applies `f(index, item)` to every element.
    pub fn for_each_indexed_mut<T, F>(&self, items: &mut [T], f: F)
    where
        T: Send,
        F: Fn(usize, &mut T) + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if !self.is_sequential() {
            return self.install(|| {
                items
                    .par_iter_mut()
                    .with_min_len(1 << 14)
                    .enumerate()
                    .for_each(|(i, t)| f(i, t))
            });
        }
        items.iter_mut().enumerate().for_each(|(i, t)| f(i, t));
    }

    #[cfg(feature = "parallel")]
    fn install<R: Send>(&self, op: impl FnOnce() -> R + Send) -> R {
        match &self.pool {
            Some(pool) => pool.install(op),
            None => op(),
        }
    }
}

#[derive(Debug, thiserror::Error)]
#[error("cannot start worker pool: {0}")]
pub struct WorkerError(String);
