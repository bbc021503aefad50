//! Seeded randomness for synthetic graphs.
//!
//! The generator is xoshiro256++ seeded through SplitMix64
//! (`Xoshiro256PlusPlus::seed_from_u64`). Bounded draws use Lemire's
//! multiply-and-reject method on full 64-bit outputs, and shuffles are
//! Fisher-Yates from the last position down. Both reductions are written
//! out here so fixtures do not depend on the sampling internals of any
//! particular `rand` release.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

pub(crate) struct SynthRng(Xoshiro256PlusPlus);

impl SynthRng {
    pub(crate) fn new(seed: u64) -> Self {
        Self(Xoshiro256PlusPlus::seed_from_u64(seed))
    }

    pub(crate) fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform integer in `0..bound`. `bound` must be nonzero.
    pub(crate) fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let mut product = u128::from(self.next_u64()) * u128::from(bound);
        let mut low = product as u64;
        if low < bound {
            let threshold = bound.wrapping_neg() % bound;
            while low < threshold {
                product = u128::from(self.next_u64()) * u128::from(bound);
                low = product as u64;
            }
        }
        (product >> 64) as u64
    }

    pub(crate) fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let k = self.below(i as u64 + 1) as usize;
            items.swap(i, k);
        }
    }
}


#[cfg(test)]
const FROZEN_SEED_0: [u64; 4] = [
    0x53175d61490b23df,
    0x61da6f3dc380d507,
    0x5c0fdf91ec9a7bfc,
    0x02eebf8c3bbe5e1a,
];

#[cfg(test)]
const FROZEN_SEED_42: [u64; 2] = [0xd0764d4f4476689f, 0x519e4174576f3791];
