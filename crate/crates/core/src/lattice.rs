//! The restriction lattice: all 3^n partial assignments of n variables.
//!
//! A state assigns each variable a digit 0 (fixed to 0), 1 (fixed to 1) or
//! 2 (free), packed as a mixed-radix base-3 index. Fixing a free digit
//! strictly decreases the index, so a single ascending scan visits every
//! child before its parent and dynamic programs over subfunctions become
//! linear passes over dense arrays.
//!
//! The subfunction weight of every state is computed once here; the exact
//! module layers its cost recursions on top, and the certificate and
//! criticality modules read weights and depths straight off the arrays.

use crate::error::Error;
use crate::table::TruthTable;
use crate::Restriction;
use crate::Result;

/// Default cap on n for 3^n dynamic programs (the memo is the binding cost:
/// 3^14 is ~4.8M states).
pub const DEFAULT_DP_LIMIT: u32 = 14;

/// Subfunction weights for every restriction of a fixed function.
pub struct RestrictionLattice {
    n: u32,
    pow3: Vec<usize>,
    weights: Vec<u32>,
}

/// Visit all 3^n states in ascending index order.
///
/// The callback receives `(state, free_mask, ones_mask)` where bit i of
/// `free_mask` marks digit i = 2 and bit i of `ones_mask` marks digit i = 1.
/// Amortized O(1) per state via an odometer.
pub fn scan_states(n: u32, mut visit: impl FnMut(usize, u32, u32)) {
    let n = n as usize;
    let states = 3usize.pow(n as u32);
    let mut digits = vec![0u8; n];
    let mut free_mask = 0u32;
    let mut ones_mask = 0u32;
    for state in 0..states {
        visit(state, free_mask, ones_mask);
        for (i, d) in digits.iter_mut().enumerate() {
            match *d {
                0 => {
                    *d = 1;
                    ones_mask |= 1 << i;
                    break;
                }
                1 => {
                    *d = 2;
                    ones_mask &= !(1 << i);
                    free_mask |= 1 << i;
                    break;
                }
                _ => {
                    *d = 0;
                    free_mask &= !(1 << i);
                }
            }
        }
    }
}

impl RestrictionLattice {
    pub fn build(f: &TruthTable) -> Result<RestrictionLattice> {
        Self::build_with_limit(f, DEFAULT_DP_LIMIT)
    }

    pub fn build_with_limit(f: &TruthTable, limit: u32) -> Result<RestrictionLattice> {
        let n = f.n();
        if n > limit {
            return Err(Error::DpLimitExceeded { n, limit });
        }
        let pow3: Vec<usize> = (0..=n).map(|i| 3usize.pow(i)).collect();
        let mut weights = vec![0u32; pow3[n as usize]];
        scan_states(n, |state, free_mask, ones_mask| {
            weights[state] = if free_mask == 0 {
                u32::from(f.get(ones_mask))
            } else {
                let i = free_mask.trailing_zeros() as usize;
                weights[state - 2 * pow3[i]] + weights[state - pow3[i]]
            };
        });
        Ok(RestrictionLattice { n, pow3, weights })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn num_states(&self) -> usize {
        self.pow3[self.n as usize]
    }

    /// The all-free state (every digit 2), i.e. the unrestricted function.
    pub fn root(&self) -> usize {
        self.num_states() - 1
    }

    /// wt(f|rho) for the state encoding rho.
    #[inline]
    pub fn weight(&self, state: usize) -> u32 {
        self.weights[state]
    }

    /// State reached from `state` by fixing free digit `pos` to `val`.
    #[inline]
    pub fn fix(&self, state: usize, pos: u32, val: bool) -> usize {
        state - (2 - usize::from(val)) * self.pow3[pos as usize]
    }

    /// Is the subfunction at `state` constant, given its free-variable count?
    #[inline]
    pub fn is_constant(&self, state: usize, free_count: u32) -> bool {
        let w = self.weights[state];
        w == 0 || w == 1 << free_count
    }

    /// Mixed-radix state index of a restriction (fixed digits from rho,
    /// all other digits free).
    pub fn state_of(&self, rho: &Restriction) -> usize {
        let mut state = self.root();
        for (var, val) in rho.iter() {
            state = self.fix(state, var - 1, val);
        }
        state
    }

    /// Smallest support size of a restriction whose subfunction is
    /// constant; this equals min over x of the certificate complexity.
    pub fn min_constant_support(&self) -> u32 {
        let n = self.n;
        let mut best = n;
        scan_states(n, |state, free_mask, _| {
            let fc = free_mask.count_ones();
            let fixed = n - fc;
            if fixed < best && self.is_constant(state, fc) {
                best = fixed;
            }
        });
        best
    }
}
