//! Small deterministic pseudo-random generator for coordinate draws.
//!
//! Seeded draws must be reproducible bit-for-bit across platforms and across
//! releases, so the generator is pinned here instead of depending on an
//! external crate whose stream might change between versions.

/// SplitMix64 generator. Not cryptographic; used only to draw small integer
/// coefficients for generic changes of coordinates and generic linear forms.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// Derives an independent stream from a master seed and a fixed offset,
    /// so that draw k of a computation is reproducible in isolation.
    pub fn derive(master: u64, offset: u64) -> Self {
        let mut g = SplitMix64::new(master ^ offset.wrapping_mul(0x9E3779B97F4A7C15));
        g.next_u64(); // decorrelate from the raw xor
        g
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform draw in `[lo, hi]` inclusive, by rejection sampling.
    pub fn next_in(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        let span = (hi - lo) as u64 + 1;
        let limit = u64::MAX - u64::MAX % span;
        loop {
            let v = self.next_u64();
            if v < limit {
                return lo + (v % span) as i64;
            }
        }
    }

    /// Uniform nonzero draw in `[-bound, bound]`.
    pub fn next_nonzero(&mut self, bound: i64) -> i64 {
        loop {
            let v = self.next_in(-bound, bound);
            if v != 0 {
                return v;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_streams() {
        let mut a = SplitMix64::derive(7, 1);
        let mut b = SplitMix64::derive(7, 1);
        for _ in 0..32 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn ranges_respected() {
        let mut g = SplitMix64::new(42);
        for _ in 0..1000 {
            let v = g.next_in(-5, 5);
            assert!((-5..=5).contains(&v));
            assert_ne!(g.next_nonzero(3), 0);
        }
    }
}
