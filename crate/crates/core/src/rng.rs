//! Portable seeded randomness.
//!
//! All seeded behavior (shuffled deletion orders, instance generators) draws
//! from SplitMix64 seeded directly with the user seed. Bounded draws use
//! rejection: a raw `x` is rejected while `x >= 2^64 - (2^64 mod bound)`,
//! then `x mod bound` is returned. Shuffles are Fisher-Yates from the last
//! position down, swapping position `i` with `below(i + 1)`. Any
//! implementation following these three rules reproduces the same corpora.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

#[derive(Debug, Clone)]
pub struct SeededRng(SplitMix64);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng(SplitMix64::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform draw from `0..bound`. `bound` must be positive.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let span = 1u128 << 64;
        let accept_below = span - span % u128::from(bound);
        loop {
            let x = self.next_u64();
            if u128::from(x) < accept_below {
                return x % bound;
            }
        }
    }

    /// Uniform draw from the inclusive range `lo..=hi`.
    pub fn range_inclusive(&mut self, lo: u64, hi: u64) -> u64 {
        assert!(lo <= hi);
        lo + self.below(hi - lo + 1)
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}
