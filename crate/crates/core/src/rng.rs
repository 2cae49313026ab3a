//! Seeded random streams.
//!
//! Every stochastic component draws from an [`RngStream`]. A stream can spawn
//! labelled sub-streams whose state depends only on the parent seed and the
//! label, never on how many values the parent has produced, so work split
//! across threads replays identically.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Combines a seed with a label into a new, well-mixed seed.
pub fn derive_seed(seed: u64, label: u64) -> u64 {
    mix64(seed ^ mix64(label.wrapping_add(0x6A09_E667_F3BC_C909)))
}

#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Independent stream determined by `(self.seed, label)` alone.
    pub fn substream(&self, label: u64) -> RngStream {
        RngStream::new(derive_seed(self.seed, label))
    }

    /// Draws a fresh seed from the current state and returns a stream for it.
    /// Advances `self`.
    pub fn fork(&mut self) -> RngStream {
        let s = self.rng.next_u64();
        RngStream::new(s)
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}
