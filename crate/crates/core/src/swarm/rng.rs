//! Portable random stream used by both optimizers.
//!
//! The generator is xoshiro256++ seeded through SplitMix64 (the reference
//! seeding procedure), so a run can be replayed by any implementation of the
//! same generator. Uniform reals take the top 53 bits of one 64-bit output:
//! `u = (x >> 11) * 2^-53`, giving `u` in `[0, 1)`. Integer draws in `0..n`
//! are `floor(u * n)` of one such uniform.

use rand::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

#[derive(Debug, Clone)]
pub struct SwarmRng {
    inner: Xoshiro256PlusPlus,
}

impl SwarmRng {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: Xoshiro256PlusPlus::seed_from_u64(seed),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform draw in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform draw in `[lo, hi)`.
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Uniform index in `0..n`. `n` must be non-zero.
    pub fn index(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        ((self.uniform() * n as f64) as usize).min(n - 1)
    }

    /// Uniform index in `0..n` excluding `skip`. Consumes one draw.
    pub fn index_except(&mut self, n: usize, skip: usize) -> usize {
        debug_assert!(n > 1 && skip < n);
        let k = self.index(n - 1);
        if k >= skip {
            k + 1
        } else {
            k
        }
    }
}
