//! Small deterministic PRNG used for seeded searches and randomized suites.
//!
//! xorshift64* with a fixed stream. The witness search and the randomized
//! test suites promise bit-identical results run to run, so their random
//! source is pinned here.

use crate::linalg::Rational;
use num_bigint::BigInt;
use num_rational::BigRational;

/// xorshift64* stream.
#[derive(Debug, Clone)]
pub struct DetRng {
    state: u64,
}

impl DetRng {
    pub fn new(seed: u64) -> Self {
        // A zero state would lock the stream at zero.
        let state = if seed == 0 { 0x9E3779B97F4A7C15 } else { seed };
        DetRng { state }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    /// Uniform draw from `lo..=hi`.
    pub fn next_in(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi - lo) as u64 + 1;
        lo + (self.next_u64() % span) as i64
    }

    /// Random rational with numerator in `-max_num..=max_num` and denominator
    /// in `1..=max_den`.
    pub fn next_rational(&mut self, max_num: i64, max_den: i64) -> Rational {
        let n = self.next_in(-max_num, max_num);
        let d = self.next_in(1, max_den);
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    /// Random nonzero rational, same ranges as `next_rational`.
    pub fn next_nonzero_rational(&mut self, max_num: i64, max_den: i64) -> Rational {
        loop {
            let r = self.next_rational(max_num, max_den);
            if !num_traits::Zero::is_zero(&r) {
                return r;
            }
        }
    }
}
