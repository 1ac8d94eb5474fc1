//! Seeded random streams.
//!
//! A run owns one master seed. Particle `i` draws jumps from ChaCha8 stream
//! `i + 1`, and the sequential-update index chooser draws from stream `0`,
//! so a particle's draw sequence depends only on (seed, particle, how often
//! it was chosen) and never on what other particles did. Batch experiments
//! derive per-run seeds with [`derive_seed`], keeping runs order-independent.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// SplitMix64 step; the standard seed-spreading finalizer.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for run `index` in a batch rooted at `master`.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(index.wrapping_add(1)))
}

/// The random streams owned by a single simulation run.
#[derive(Debug, Clone)]
pub struct RunStreams {
    chooser: ChaCha8Rng,
    particles: Vec<ChaCha8Rng>,
}

impl RunStreams {
    pub fn new(seed: u64, n: usize) -> Self {
        let mut chooser = ChaCha8Rng::seed_from_u64(seed);
        chooser.set_stream(0);
        let particles = (0..n)
            .map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(i as u64 + 1);
                rng
            })
            .collect();
        Self { chooser, particles }
    }

    /// Stream feeding the sequential-update index choice.
    pub fn chooser(&mut self) -> &mut ChaCha8Rng {
        &mut self.chooser
    }

    /// Stream feeding particle `i`'s jump draws.
    pub fn particle(&mut self, i: usize) -> &mut ChaCha8Rng {
        &mut self.particles[i]
    }
}
