//! Seeded random stream shared by every model.
//!
//! Output contract: the raw stream is xoshiro256++ seeded through SplitMix64
//! (`seed_from_u64`), so a seed yields the same `u64` sequence on every
//! platform. Derived draws (indices, unit floats, shuffles) are computed here
//! rather than through `rand` distributions, whose algorithms are not pinned
//! across versions.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Identifier written into run manifests.
pub const RNG_ALGORITHM: &str =
    "xoshiro256++/splitmix64-seed; lemire-rejection index; 53-bit unit float";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RngStream {
    seed: u64,
    inner: Xoshiro256PlusPlus,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        RngStream {
            seed,
            inner: Xoshiro256PlusPlus::seed_from_u64(seed),
        }
    }

    /// The seed this stream was created from.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `(0, 1]`.
    pub fn next_f64_open_closed(&mut self) -> f64 {
        1.0 - self.next_f64()
    }

    /// True with probability `p` (clamped to `[0, 1]`). Always consumes one draw.
    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.next_f64() < p
    }

    /// Unbiased index in `[0, n)` by multiply-and-reject, no modulo bias.
    pub fn uniform_index(&mut self, n: usize) -> Result<usize> {
        if n == 0 {
            return Err(Error::EmptyChoiceSet);
        }
        let n = n as u64;
        let mut m = (self.next_u64() as u128) * (n as u128);
        let mut low = m as u64;
        if low < n {
            let threshold = n.wrapping_neg() % n;
            while low < threshold {
                m = (self.next_u64() as u128) * (n as u128);
                low = m as u64;
            }
        }
        Ok((m >> 64) as usize)
    }

    /// Uniformly chosen element of a non-empty slice.
    pub fn choose<'a, T>(&mut self, items: &'a [T]) -> Result<&'a T> {
        let i = self.uniform_index(items.len())?;
        Ok(&items[i])
    }

    /// Fisher-Yates shuffle in place.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.uniform_index(i + 1).expect("i + 1 >= 1");
            items.swap(i, j);
        }
    }

    /// A uniformly random permutation of `0..n`.
    pub fn random_permutation(&mut self, n: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        self.shuffle(&mut p);
        p
    }

    /// `k` distinct indices from `0..n`, uniformly, in draw order.
    ///
    /// Panics if `k > n`.
    pub fn sample_distinct(&mut self, n: usize, k: usize) -> Vec<usize> {
        assert!(k <= n, "cannot sample {k} distinct values from {n}");
        let mut pool: Vec<usize> = (0..n).collect();
        for i in 0..k {
            let j = i + self.uniform_index(n - i).expect("n - i >= 1");
            pool.swap(i, j);
        }
        pool.truncate(k);
        pool
    }
}

/// Free-function form of [`RngStream::uniform_index`].
pub fn uniform_index(rng: &mut RngStream, n: usize) -> Result<usize> {
    rng.uniform_index(n)
}

/// Free-function form of [`RngStream::random_permutation`].
pub fn random_permutation(rng: &mut RngStream, n: usize) -> Vec<usize> {
    rng.random_permutation(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_choice_is_zero() {
        let mut rng = RngStream::new(7);
        for _ in 0..100 {
            assert_eq!(rng.uniform_index(1).unwrap(), 0);
        }
    }

    #[test]
    fn empty_choice_set_is_an_error() {
        let mut rng = RngStream::new(7);
        assert!(matches!(rng.uniform_index(0), Err(Error::EmptyChoiceSet)));
        assert!(rng.choose::<u8>(&[]).is_err());
    }

    #[test]
    fn equal_seeds_equal_streams() {
        let mut a = RngStream::new(0xDEAD_BEEF);
        let mut b = RngStream::new(0xDEAD_BEEF);
        for _ in 0..10_000 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
        let mut c = RngStream::new(1);
        let mut d = RngStream::new(2);
        assert_ne!(c.next_u64(), d.next_u64());
    }

    #[test]
    fn stream_is_pinned() {
        // Reference values from an independent SplitMix64 + xoshiro256++
        // implementation. A change here breaks every recorded experiment.
        let mut rng = RngStream::new(42);
        let got: Vec<u64> = (0..3).map(|_| rng.next_u64()).collect();
        assert_eq!(got, FROZEN_SEED_42);
    }

    const FROZEN_SEED_42: [u64; 3] = [
        15021278609987233951,
        5881210131331364753,
        18149643915985481100,
    ];

    #[test]
    fn state_survives_serialization() {
        let mut rng = RngStream::new(99);
        rng.next_u64();
        let json = serde_json::to_string(&rng).unwrap();
        let mut back: RngStream = serde_json::from_str(&json).unwrap();
        assert_eq!(back.seed(), 99);
        for _ in 0..100 {
            assert_eq!(rng.next_u64(), back.next_u64());
        }
    }

    #[test]
    fn unit_floats_in_range() {
        let mut rng = RngStream::new(3);
        for _ in 0..10_000 {
            let u = rng.next_f64();
            assert!((0.0..1.0).contains(&u));
            let v = rng.next_f64_open_closed();
            assert!(v > 0.0 && v <= 1.0);
        }
    }

    #[test]
    fn permutation_edge_cases() {
        let mut rng = RngStream::new(5);
        assert!(rng.random_permutation(0).is_empty());
        assert_eq!(rng.random_permutation(1), vec![0]);
        let mut p = rng.random_permutation(50);
        p.sort_unstable();
        assert_eq!(p, (0..50).collect::<Vec<_>>());
    }

    #[test]
    fn sample_distinct_is_distinct() {
        let mut rng = RngStream::new(11);
        let mut s = rng.sample_distinct(100, 40);
        assert_eq!(s.len(), 40);
        s.sort_unstable();
        s.dedup();
        assert_eq!(s.len(), 40);
        assert!(s.iter().all(|&i| i < 100));
    }
}
