//! Certificate complexity.

use crate::lattice::RestrictionLattice;
use crate::table::TruthTable;
use crate::Result;

/// Smallest |S| such that fixing the coordinates in S to x's values makes
/// f constant; 0 iff f is constant. Candidate sets are enumerated in
/// increasing size with early exit (practical for n <= 16).
pub fn certificate_complexity(f: &TruthTable, x: u32) -> u32 {
    let n = f.n();
    debug_assert!((x as usize) < f.size());
    if f.is_constant() {
        return 0;
    }
    let want = f.get(x);
    for k in 1..n {
        let mut mask = (1u32 << k) - 1;
        // Gosper's hack over all size-k subsets of the n coordinates.
        while mask < 1 << n {
            if certifies(f, x, mask, want) {
                return k;
            }
            let c = mask & mask.wrapping_neg();
            let r = mask + c;
            mask = (((r ^ mask) >> 2) / c) | r;
        }
    }
    n
}

/// Does fixing the coordinates in `mask` to x's values force output `want`?
fn certifies(f: &TruthTable, x: u32, mask: u32, want: bool) -> bool {
    let n = f.n();
    let free = !mask & ((1u32 << n) - 1);
    let base = x & mask;
    // Enumerate all assignments of the free coordinates.
    let mut sub = free;
    loop {
        if f.get(base | sub) != want {
            return false;
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & free;
    }
    true
}

/// min over x of the certificate complexity, computed as the smallest
/// support of a constant-forcing restriction.
///
/// Uses the restriction-lattice weight table when the 3^n memo fits
/// (the default DP limit); larger functions fall back to direct
/// size-ordered search.
pub fn min_certificate(f: &TruthTable) -> Result<u32> {
    min_certificate_with_limit(f, crate::lattice::DEFAULT_DP_LIMIT)
}

pub fn min_certificate_with_limit(f: &TruthTable, lattice_limit: u32) -> Result<u32> {
    if f.n() <= lattice_limit {
        let lat = RestrictionLattice::build_with_limit(f, lattice_limit)?;
        return Ok(lat.min_constant_support());
    }
    // Direct search: for each support size k, try every size-k variable
    // set and every assignment of it.
    let n = f.n();
    if f.is_constant() {
        return Ok(0);
    }
    for k in 1..n {
        let mut mask = (1u32 << k) - 1;
        while mask < 1 << n {
            let mut vals = mask;
            loop {
                if restriction_constant(f, mask, vals) {
                    return Ok(k);
                }
                if vals == 0 {
                    break;
                }
                vals = (vals - 1) & mask;
            }
            let c = mask & mask.wrapping_neg();
            let r = mask + c;
            mask = (((r ^ mask) >> 2) / c) | r;
        }
    }
    Ok(n)
}

fn restriction_constant(f: &TruthTable, mask: u32, vals: u32) -> bool {
    let n = f.n();
    let free = !mask & ((1u32 << n) - 1);
    let first = f.get(vals);
    let mut sub = free;
    while sub != 0 {
        if f.get(vals | sub) != first {
            return false;
        }
        sub = (sub - 1) & free;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;
    use crate::sampling::sample_fixed_weight;

    fn xor(n: u32) -> TruthTable {
        TruthTable::from_index_fn(n, |idx| idx.count_ones() % 2 == 1).unwrap()
    }

    fn and(n: u32) -> TruthTable {
        TruthTable::from_index_fn(n, |idx| idx == (1 << n) - 1).unwrap()
    }

    #[test]
    fn and_certificates() {
        let f = and(3);
        assert_eq!(certificate_complexity(&f, 0b111), 3);
        assert_eq!(certificate_complexity(&f, 0b110), 1);
        assert_eq!(certificate_complexity(&f, 0b000), 1);
    }

    #[test]
    fn parity_has_full_certificates() {
        let f = xor(5);
        for x in 0..32 {
            assert_eq!(certificate_complexity(&f, x), 5);
        }
        assert_eq!(min_certificate(&f).unwrap(), 5);
        assert_eq!(min_certificate(&xor(3)).unwrap(), 3);
    }

    #[test]
    fn constant_iff_zero() {
        let c = TruthTable::ones(4).unwrap();
        assert_eq!(certificate_complexity(&c, 7), 0);
        assert_eq!(min_certificate(&c).unwrap(), 0);
        assert_eq!(min_certificate(&and(3)).unwrap(), 1);
    }

    #[test]
    fn min_certificate_matches_per_input_search() {
        // Independent oracle: min over all x of a per-input subset scan.
        let f = sample_fixed_weight(10, 512, 404).unwrap();
        let oracle = (0..f.size() as u32)
            .map(|x| certificate_complexity(&f, x))
            .min()
            .unwrap();
        assert_eq!(min_certificate(&f).unwrap(), oracle);

        let mut rng = SplitMix64::new(8);
        for _ in 0..6 {
            let g = sample_fixed_weight(7, 1 + rng.below(100), rng.next_u64()).unwrap();
            let oracle = (0..g.size() as u32)
                .map(|x| certificate_complexity(&g, x))
                .min()
                .unwrap();
            assert_eq!(min_certificate(&g).unwrap(), oracle);
        }
    }

    #[test]
    fn min_certificate_lower_bounds_every_input() {
        let f = sample_fixed_weight(8, 40, 99).unwrap();
        let mc = min_certificate(&f).unwrap();
        for x in 0..f.size() as u32 {
            assert!(mc <= certificate_complexity(&f, x));
        }
    }
}
