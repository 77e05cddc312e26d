//! Chunked Monte Carlo with per-chunk ChaCha substreams. Chunks are
//! independent and reduced in chunk order, so an estimate depends only on
//! (seed, samples, chunk_size) and never on the worker count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonteCarloSpec {
    pub samples: u64,
    pub seed: u64,
    pub chunk_size: u64,
    /// Worker threads; 0 uses the ambient rayon pool. Does not affect results.
    pub workers: usize,
}

impl Default for MonteCarloSpec {
    fn default() -> Self {
        Self { samples: 1_000_000, seed: 7, chunk_size: 16_384, workers: 0 }
    }
}

impl MonteCarloSpec {
    pub fn new(samples: u64, seed: u64) -> Self {
        Self { samples, seed, ..Self::default() }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_chunk_size(mut self, chunk_size: u64) -> Self {
        self.chunk_size = chunk_size;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::InvalidInput("sample count must be positive".into()));
        }
        if self.chunk_size == 0 {
            return Err(Error::InvalidInput("chunk size must be positive".into()));
        }
        Ok(())
    }

    fn chunks(&self) -> u64 {
        self.samples.div_ceil(self.chunk_size)
    }

    /// Generator for chunk `index`: the seed picks the key, the chunk index
    /// picks the stream.
    pub fn chunk_rng(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }
}

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate<T> {
    pub mean: T,
    pub stderr: T,
    pub samples: u64,
}

#[derive(Clone, Copy)]
struct Moments<T> {
    count: u64,
    mean: T,
    m2: T,
}

impl<T: Scalar> Moments<T> {
    fn empty() -> Self {
        Self { count: 0, mean: T::zero(), m2: T::zero() }
    }

    fn push(&mut self, x: T) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean = self.mean + delta / T::from_u64(self.count).expect("count");
        self.m2 = self.m2 + delta * (x - self.mean);
    }

    fn merge(self, other: Self) -> Self {
        if self.count == 0 {
            return other;
        }
        if other.count == 0 {
            return self;
        }
        let na = T::from_u64(self.count).expect("count");
        let nb = T::from_u64(other.count).expect("count");
        let n = na + nb;
        let delta = other.mean - self.mean;
        Self {
            count: self.count + other.count,
            mean: self.mean + delta * nb / n,
            m2: self.m2 + other.m2 + delta * delta * na * nb / n,
        }
    }
}

/// Averages `sample(rng, scratch)` over `spec.samples` draws.
pub fn estimate_mean<T, F>(spec: &MonteCarloSpec, sample: F) -> Result<Estimate<T>>
where
    T: Scalar,
    F: Fn(&mut ChaCha8Rng, &mut Vec<T>) -> T + Sync,
{
    spec.validate()?;
    let run_chunk = |index: u64| {
        let mut rng = spec.chunk_rng(index);
        let start = index * spec.chunk_size;
        let len = spec.chunk_size.min(spec.samples - start);
        let mut scratch = Vec::new();
        let mut m = Moments::empty();
        for _ in 0..len {
            m.push(sample(&mut rng, &mut scratch));
        }
        m
    };
    let chunks = spec.chunks();
    let parts: Vec<Moments<T>> = if spec.workers == 1 {
        (0..chunks).map(run_chunk).collect()
    } else if spec.workers == 0 {
        (0..chunks).into_par_iter().map(run_chunk).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(spec.workers)
            .build()
            .map_err(|e| Error::InvalidInput(format!("cannot build worker pool: {e}")))?;
        pool.install(|| (0..chunks).into_par_iter().map(run_chunk).collect())
    };
    let total = parts.into_iter().fold(Moments::empty(), Moments::merge);
    let var = if total.count > 1 {
        total.m2 / T::from_u64(total.count - 1).expect("count")
    } else {
        T::zero()
    };
    Ok(Estimate {
        mean: total.mean,
        stderr: (var / T::from_u64(total.count).expect("count")).sqrt(),
        samples: total.count,
    })
}
