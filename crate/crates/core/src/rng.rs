//! Seeded 64-bit generator for reproducible lattice sampling.
//!
//! SplitMix64: tiny, stateless-friendly and identical on every platform,
//! which is what the reproducibility contract of the covering reports
//! needs. Not cryptographic.

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform integer in `[-bound, bound]`. Modulo bias is negligible for
    /// the tiny bounds used here and keeps the stream platform-stable.
    pub fn next_coeff(&mut self, bound: u32) -> i64 {
        let range = 2 * bound as u64 + 1;
        (self.next_u64() % range) as i64 - bound as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_stream() {
        let mut a = SplitMix64::new(0);
        let mut b = SplitMix64::new(0);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn coeffs_cover_range() {
        let mut rng = SplitMix64::new(1);
        let mut seen = [false; 7];
        for _ in 0..200 {
            let c = rng.next_coeff(3);
            assert!((-3..=3).contains(&c));
            seen[(c + 3) as usize] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }
}
