//! Seedable random source.

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng as _, RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

/// Identity of the generator, reported by the CLI for reproducibility.
pub const ALGORITHM: &str = "chacha20 (rand_chacha 0.3, seed_from_u64, stream = worker index)";

/// ChaCha20 stream. `Rng::new(seed, worker)` seeds with `seed_from_u64(seed)`
/// and selects stream `worker`, so workers sharing a seed draw from
/// disjoint streams.
#[derive(Clone, Debug)]
pub struct Rng {
    inner: ChaCha20Rng,
}

impl Rng {
    pub fn new(seed: u64, worker: u64) -> Self {
        let mut inner = ChaCha20Rng::seed_from_u64(seed);
        inner.set_stream(worker);
        Rng { inner }
    }

    pub fn seeded(seed: u64) -> Self {
        Self::new(seed, 0)
    }

    /// Uniform in `0..bound`; `bound > 0`. Unbiased (widening multiply
    /// with rejection).
    pub fn below(&mut self, bound: u64) -> u64 {
        self.inner.gen_range(0..bound)
    }

    /// Uniform in `1..=bound`.
    pub fn one_to(&mut self, bound: u64) -> u64 {
        self.inner.gen_range(1..=bound)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        items.shuffle(&mut self.inner);
    }

    /// Uniform in `0..bound` for a big bound: draw `bits(bound)` random bits
    /// in 64-bit blocks and reject values `>= bound`.
    pub fn below_big(&mut self, bound: &BigUint) -> BigUint {
        assert!(bound.bits() > 0, "bound must be positive");
        let bits = bound.bits();
        let words = bits.div_ceil(64) as usize;
        let excess = words as u64 * 64 - bits;
        loop {
            let mut digits: Vec<u64> = (0..words).map(|_| self.inner.next_u64()).collect();
            if excess > 0 {
                *digits.last_mut().unwrap() >>= excess;
            }
            let x = BigUint::from_slice(
                &digits.iter().flat_map(|d| [*d as u32, (*d >> 32) as u32]).collect::<Vec<u32>>(),
            );
            if &x < bound {
                return x;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let a: Vec<u64> = (0..8).map({
            let mut r = Rng::seeded(7);
            move |_| r.next_u64()
        })
        .collect();
        let mut r = Rng::seeded(7);
        let b: Vec<u64> = (0..8).map(|_| r.next_u64()).collect();
        assert_eq!(a, b);
        let mut other = Rng::new(7, 1);
        assert_ne!(other.next_u64(), a[0]);
    }

    #[test]
    fn big_draws_stay_in_range_and_cover() {
        let mut r = Rng::seeded(1);
        let bound = BigUint::from(5u32);
        let mut seen = [0u32; 5];
        for _ in 0..5000 {
            let x = r.below_big(&bound);
            seen[usize::try_from(&x).unwrap()] += 1;
        }
        assert!(seen.iter().all(|&c| (850..1150).contains(&c)), "{:?}", seen);
        let huge = BigUint::from(3u32).pow(200);
        for _ in 0..100 {
            assert!(r.below_big(&huge) < huge);
        }
    }
}
