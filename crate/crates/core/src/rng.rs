//! Seeded random source. Every sampler consumes 64-bit words from a ChaCha8
//! stream and documents how many words each draw takes, so outputs are a pure
//! function of the seed.

use num_bigint::BigUint;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

#[derive(Clone, Debug)]
pub struct RngState {
    inner: ChaCha8Rng,
}

/// splitmix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for replicate `i` of a run seeded with `seed`.
pub fn derive_seed(seed: u64, i: u64) -> u64 {
    mix64(mix64(seed) ^ i.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(1))
}

impl RngState {
    pub fn new(seed: u64) -> Self {
        RngState {
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Independent stream for replicate `i`.
    pub fn for_replicate(seed: u64, i: u64) -> Self {
        RngState::new(derive_seed(seed, i))
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform on [0,1) with 53 random bits; one word.
    #[inline]
    pub fn uniform01(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on (0,1); one word.
    #[inline]
    pub fn open01(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    /// Fair coin; one word. Same outcome as `bernoulli(0.5)` on the same word.
    #[inline]
    pub fn coin(&mut self) -> bool {
        self.next_u64() >> 63 == 0
    }

    /// True with probability `p`; one word. `p = 0` never and `p = 1` always succeed.
    #[inline]
    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.uniform01() < p
    }

    /// Uniform integer in `0..n` by rejection (Lemire's method without division bias).
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        let zone = u64::MAX - (u64::MAX - n + 1) % n;
        loop {
            let x = self.next_u64();
            if x <= zone {
                return x % n;
            }
        }
    }

    /// Uniform big integer in `0..n`: draw `bits(n)` random bits, reject if ≥ n.
    pub fn biguint_below(&mut self, n: &BigUint) -> BigUint {
        assert!(*n > BigUint::from(0u8));
        let bits = n.bits();
        let words = bits.div_ceil(64) as usize;
        let top = bits - 64 * (words as u64 - 1);
        let top_mask = if top == 64 { u64::MAX } else { (1u64 << top) - 1 };
        loop {
            let mut digits: Vec<u64> = (0..words).map(|_| self.next_u64()).collect();
            digits[words - 1] &= top_mask;
            let x = BigUint::from_slice(
                &digits
                    .iter()
                    .flat_map(|d| [*d as u32, (*d >> 32) as u32])
                    .collect::<Vec<_>>(),
            );
            if x < *n {
                return x;
            }
        }
    }

    /// Fisher–Yates from the back: for i = len-1 down to 1 swap with `below(i+1)`.
    pub fn shuffle<T>(&mut self, xs: &mut [T]) {
        for i in (1..xs.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            xs.swap(i, j);
        }
    }

    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        self.shuffle(&mut p);
        p
    }
}
