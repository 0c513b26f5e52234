//! Seeded random number generation.
//!
//! The generator is pinned to SplitMix64 (Steele, Lea & Flood's 64-bit
//! finalizer-based generator): `state += 0x9E3779B97F4A7C15` per step, with
//! the murmur-style output mix. State is a single u64 and all arithmetic is
//! integer, so traces are reproducible bit-for-bit.
//!
//! Parallel work derives independent streams as `stream(seed, i)`, which
//! seeds a fresh generator with `seed XOR i`. Experiments that need several
//! independent phases under one user seed derive phase seeds with
//! [`phase_seed`]. Results are therefore independent of thread scheduling:
//! trial `i` always consumes exactly the stream `seed ^ i`.

/// SplitMix64 generator.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// Stream `index` under a common seed.
    pub fn stream(seed: u64, index: u64) -> Self {
        SplitMix64 { state: seed ^ index }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform value in `[0, bound)` via Lemire's widening-multiply
    /// rejection method; unbiased and integer-only.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let mut x = self.next_u64();
        let mut m = (x as u128) * (bound as u128);
        let mut low = m as u64;
        if low < bound {
            let threshold = bound.wrapping_neg() % bound;
            while low < threshold {
                x = self.next_u64();
                m = (x as u128) * (bound as u128);
                low = m as u64;
            }
        }
        (m >> 64) as u64
    }

    pub fn bool(&mut self) -> bool {
        self.next_u64() >> 63 == 1
    }
}

/// Deterministic sub-seed for phase `k` of an experiment seeded by `seed`.
///
/// Distinct phases must not share streams with each other or with the
/// per-trial streams `seed ^ i`, so the phase seed is a full SplitMix64
/// output of `seed + k + 1` rather than a plain XOR.
pub fn phase_seed(seed: u64, k: u64) -> u64 {
    SplitMix64::new(seed.wrapping_add(k).wrapping_add(1)).next_u64()
}
