//! Deterministic random streams.
//!
//! Every random draw in the toolkit comes from [`SeededRng`], a ChaCha8 stream
//! (`rand_chacha::ChaCha8Rng`) initialised with `SeedableRng::seed_from_u64`.
//! Both are value-stable across platforms, so a seed fully determines the
//! output. Derived draws are defined here rather than through `rand`'s
//! distribution types so the draw order is part of this crate's contract:
//!
//! * [`SeededRng::int_inclusive`] consumes one `u64` per attempt and rejects
//!   the biased low zone (`2^64 mod range`), returning `lo + x mod range`.
//! * [`SeededRng::unit`] consumes one `u64` and returns its top 53 bits
//!   scaled into `[0, 1)`.
//!
//! Child seeds for independent jobs (experiment cells, Monte Carlo chunks)
//! come from [`derive_seed`], a SplitMix64 fold over the job coordinates.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives a child seed from a base seed and a list of job coordinates.
///
/// `derive_seed(b, &[])` is `b` itself; each coordinate is mixed in order.
pub fn derive_seed(base: u64, coords: &[u64]) -> u64 {
    coords
        .iter()
        .fold(base, |acc, &c| splitmix64(acc ^ splitmix64(c)))
}

/// Seeded generator with the documented derived draws.
#[derive(Clone, Debug)]
pub struct SeededRng {
    inner: ChaCha8Rng,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform integer in `lo..=hi`.
    pub fn int_inclusive(&mut self, lo: u64, hi: u64) -> u64 {
        assert!(lo <= hi, "empty integer range {lo}..={hi}");
        let range = hi.wrapping_sub(lo).wrapping_add(1);
        if range == 0 {
            return self.next_u64();
        }
        let reject_below = range.wrapping_neg() % range;
        loop {
            let x = self.next_u64();
            if x >= reject_below {
                return lo + x % range;
            }
        }
    }

    /// Uniform real in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}
