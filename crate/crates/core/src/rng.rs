//! Reproducible random streams.
//!
//! Every Monte Carlo routine draws from ChaCha20 (`rand_chacha` 0.9,
//! `ChaCha20Rng`). A run is identified by a 64-bit seed and a shard count;
//! shard `i` uses `ChaCha20Rng::seed_from_u64(seed)` with its stream set to
//! `i`. Trials are dealt to shards in contiguous blocks, shard results are
//! merged in shard order, and so a report depends only on
//! `(seed, trials, shards)`, not on how many threads executed it.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

pub type StreamRng = ChaCha20Rng;

/// The generator for shard `index` of a run seeded with `seed`.
pub fn stream(seed: u64, index: u64) -> StreamRng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Splits `total` into `shards` block sizes differing by at most one,
/// larger blocks first.
pub fn shard_sizes(total: usize, shards: usize) -> Vec<usize> {
    let shards = shards.max(1);
    let (q, r) = (total / shards, total % shards);
    (0..shards).map(|i| q + usize::from(i < r)).collect()
}

/// Sample count, seed, and shard layout of a Monte Carlo run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunPlan {
    pub samples: usize,
    pub seed: u64,
    pub shards: usize,
    /// Execute shards on the rayon pool; results are identical either way.
    pub parallel: bool,
}

impl RunPlan {
    pub const DEFAULT_SHARDS: usize = 8;

    pub fn new(samples: usize, seed: u64) -> Self {
        RunPlan {
            samples,
            seed,
            shards: Self::DEFAULT_SHARDS,
            parallel: true,
        }
    }

    pub fn with_shards(mut self, shards: usize) -> Self {
        self.shards = shards.max(1);
        self
    }

    pub fn serial(mut self) -> Self {
        self.parallel = false;
        self
    }

    /// Runs `work(rng, count)` once per shard and returns the results in
    /// shard order.
    pub fn run<T, F>(&self, work: F) -> Vec<T>
    where
        T: Send,
        F: Fn(&mut StreamRng, usize) -> T + Sync,
    {
        let sizes = shard_sizes(self.samples, self.shards);
        let job = |(i, &count): (usize, &usize)| {
            let mut rng = stream(self.seed, i as u64);
            work(&mut rng, count)
        };
        if self.parallel {
            sizes.par_iter().enumerate().map(job).collect()
        } else {
            sizes.iter().enumerate().map(job).collect()
        }
    }
}
