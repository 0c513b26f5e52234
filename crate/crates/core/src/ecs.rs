//! Column patterns and equivalent coordinate sets.
//!
//! For a function with black points x^(1), ..., x^(m), the column pattern
//! of coordinate i is the vector (x_i^(1), ..., x_i^(m)). Coordinates whose
//! patterns are equal or complementary form an equivalent coordinate set;
//! a set is pure when every member's pattern is all-zero or all-one.
//!
//! Black points are ordered lexicographically as tuples (x_1, ..., x_n)
//! with x_1 compared first. Class membership does not depend on the order,
//! but the stored patterns do, so the order is pinned here.

use crate::error::Error;
use crate::table::TruthTable;
use crate::Result;

/// Column pattern of one coordinate: m bits, one per black point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColumnPattern {
    len: usize,
    words: Vec<u64>,
}

impl ColumnPattern {
    fn zeroed(len: usize) -> Self {
        ColumnPattern {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn complement(&self) -> ColumnPattern {
        let mut out = ColumnPattern {
            len: self.len,
            words: self.words.iter().map(|w| !w).collect(),
        };
        let tail = out.len % 64;
        if tail != 0 {
            let last = out.words.len() - 1;
            out.words[last] &= (1u64 << tail) - 1;
        }
        out
    }

    fn is_all_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn is_all_one(&self) -> bool {
        self.complement().is_all_zero()
    }

    /// Canonical representative of {pattern, complement}: whichever has a
    /// zero first bit.
    fn canonical(&self) -> (ColumnPattern, bool) {
        if self.len > 0 && self.get(0) {
            (self.complement(), true)
        } else {
            (self.clone(), false)
        }
    }
}

/// One maximal equivalent coordinate set.
#[derive(Debug, Clone)]
pub struct EcsClass {
    /// Member coordinates, 1-based, ascending.
    pub members: Vec<u32>,
    /// A class is pure iff every member's pattern is constant.
    pub pure: bool,
}

/// The partition of coordinates 1..=n into maximal equivalent coordinate
/// sets, with per-coordinate patterns and polarities.
#[derive(Debug, Clone)]
pub struct EcsPartition {
    n: u32,
    classes: Vec<EcsClass>,
    class_of: Vec<usize>,
    patterns: Vec<ColumnPattern>,
    /// true when the coordinate's pattern is the complement of its class
    /// representative's (the representative is the smallest member).
    negated: Vec<bool>,
}

impl EcsPartition {
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Classes ordered by smallest member.
    pub fn classes(&self) -> &[EcsClass] {
        &self.classes
    }

    pub fn class_index_of(&self, var: u32) -> usize {
        self.class_of[(var - 1) as usize]
    }

    pub fn class_of(&self, var: u32) -> &EcsClass {
        &self.classes[self.class_index_of(var)]
    }

    pub fn pattern(&self, var: u32) -> &ColumnPattern {
        &self.patterns[(var - 1) as usize]
    }

    /// Polarity relative to the class representative: false = equal
    /// patterns, true = complementary.
    pub fn negated_vs_representative(&self, var: u32) -> bool {
        self.negated[(var - 1) as usize]
    }

    /// Are the two coordinates positively correlated (equal patterns)?
    /// Meaningful only within one class.
    pub fn positively_correlated(&self, a: u32, b: u32) -> bool {
        debug_assert_eq!(self.class_index_of(a), self.class_index_of(b));
        self.negated_vs_representative(a) == self.negated_vs_representative(b)
    }

    /// The class chosen by the query procedure: largest size, ties broken
    /// toward the smallest member; `None` if no class reaches `min_size`.
    pub fn largest_class(&self, min_size: usize) -> Option<&EcsClass> {
        // Classes are ordered by smallest member, so keeping the first
        // strict maximum realizes the tie-break.
        let mut best: Option<&EcsClass> = None;
        for class in &self.classes {
            if best.is_none_or(|b| class.members.len() > b.members.len()) {
                best = Some(class);
            }
        }
        best.filter(|c| c.members.len() >= min_size)
    }
}

/// Partition the coordinates of `f` into maximal equivalent coordinate
/// sets. Requires wt(f) >= 1: column patterns are read off the on-set.
pub fn ecs_partition(f: &TruthTable) -> Result<EcsPartition> {
    let mut points = f.on_set();
    if points.is_empty() {
        return Err(Error::ZeroWeight);
    }
    // Tuple-lexicographic order: x_1 most significant. Table indices store
    // x_1 in the least significant bit, so sort by the reversed bit string.
    let n = f.n();
    points.sort_by_key(|&idx| idx.reverse_bits() >> (32 - n));

    let m = points.len();
    let patterns: Vec<ColumnPattern> = (1..=n)
        .map(|var| {
            let mut p = ColumnPattern::zeroed(m);
            for (row, &idx) in points.iter().enumerate() {
                if TruthTable::var_bit(idx, var) {
                    p.set(row);
                }
            }
            p
        })
        .collect();

    let mut classes: Vec<EcsClass> = Vec::new();
    let mut reps: Vec<ColumnPattern> = Vec::new();
    let mut class_of = vec![usize::MAX; n as usize];
    let mut negated = vec![false; n as usize];
    for var in 1..=n {
        let pat = &patterns[(var - 1) as usize];
        let (canon, flipped) = pat.canonical();
        let slot = reps.iter().position(|r| *r == canon);
        let idx = match slot {
            Some(i) => i,
            None => {
                reps.push(canon);
                classes.push(EcsClass {
                    members: Vec::new(),
                    pure: true,
                });
                classes.len() - 1
            }
        };
        classes[idx].members.push(var);
        classes[idx].pure &= pat.is_all_zero() || pat.is_all_one();
        class_of[(var - 1) as usize] = idx;
        // Representative is the first (smallest) member; record polarity
        // against it via the canonical form.
        let rep_var = classes[idx].members[0];
        let rep_flipped = {
            let (_, f) = patterns[(rep_var - 1) as usize].canonical();
            f
        };
        negated[(var - 1) as usize] = flipped != rep_flipped;
    }

    Ok(EcsPartition {
        n,
        classes,
        class_of,
        patterns,
        negated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The 11-variable weight-2 fixture used across the crate's tests.
    pub(crate) fn weight2_fixture() -> TruthTable {
        TruthTable::from_black_points(
            11,
            &[
                &[0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 1],
                &[1, 0, 1, 0, 0, 1, 0, 1, 0, 1, 1],
            ],
        )
        .unwrap()
    }

    #[test]
    fn fixture_pure_and_mixed_classes() {
        let f = weight2_fixture();
        assert_eq!(f.weight(), 2);
        let part = ecs_partition(&f).unwrap();
        // {5, 9, 11} lie in a single pure class.
        let c5 = part.class_index_of(5);
        assert_eq!(part.class_index_of(9), c5);
        assert_eq!(part.class_index_of(11), c5);
        assert!(part.classes()[c5].pure);
        // {1, 2, 3} lie in a single mixed class.
        let c1 = part.class_index_of(1);
        assert_eq!(part.class_index_of(2), c1);
        assert_eq!(part.class_index_of(3), c1);
        assert!(!part.classes()[c1].pure);
        assert_ne!(c1, c5);
    }

    #[test]
    fn fixture_restricted_on_x5_vanishes() {
        let f = weight2_fixture();
        let rho = crate::restriction::Restriction::from_pairs(&[(5, true)]).unwrap();
        assert_eq!(f.restrict(&rho).unwrap().weight(), 0);
    }

    #[test]
    fn xor2_single_mixed_negative_class() {
        let f = TruthTable::from_index_fn(2, |idx| idx.count_ones() % 2 == 1).unwrap();
        let part = ecs_partition(&f).unwrap();
        assert_eq!(part.classes().len(), 1);
        let class = &part.classes()[0];
        assert_eq!(class.members, vec![1, 2]);
        assert!(!class.pure);
        assert!(!part.positively_correlated(1, 2));
        assert!(part.negated_vs_representative(2));
        assert!(!part.negated_vs_representative(1));
    }

    #[test]
    fn correlation_facts_hold_on_black_points() {
        // Positively correlated coordinates agree on every black point;
        // negatively correlated ones disagree.
        let f = TruthTable::from_index_fn(10, |idx| {
            idx.wrapping_mul(2654435761) % 97 < 4
        })
        .unwrap();
        if f.weight() == 0 {
            return;
        }
        let part = ecs_partition(&f).unwrap();
        for idx in f.on_set() {
            for class in part.classes() {
                for w in class.members.windows(2) {
                    let (a, b) = (w[0], w[1]);
                    let same = TruthTable::var_bit(idx, a) == TruthTable::var_bit(idx, b);
                    assert_eq!(same, part.positively_correlated(a, b));
                }
            }
        }
    }

    #[test]
    fn mixed_class_restriction_strictly_shrinks_weight() {
        let f = weight2_fixture();
        let part = ecs_partition(&f).unwrap();
        for class in part.classes().iter().filter(|c| !c.pure) {
            for &var in &class.members {
                for val in [false, true] {
                    let sub = f
                        .restrict(
                            &crate::restriction::Restriction::from_pairs(&[(var, val)]).unwrap(),
                        )
                        .unwrap();
                    assert!(sub.weight() < f.weight());
                }
            }
        }
    }

    #[test]
    fn pigeonhole_guarantees_large_class() {
        // With n > k * 2^(m-1) some class has at least k+1 members.
        for (n, m, k) in [(9u32, 2u64, 4usize), (12, 3, 2), (17, 3, 4)] {
            assert!(u64::from(n) > k as u64 * (1 << (m - 1)));
            let f = crate::sampling::sample_fixed_weight(n, m, 77).unwrap();
            let part = ecs_partition(&f).unwrap();
            let largest = part.classes().iter().map(|c| c.members.len()).max().unwrap();
            assert!(largest > k, "n={n} m={m}: largest class {largest}");
        }
    }

    #[test]
    fn largest_class_prefers_earliest_on_ties() {
        // Patterns: c1 = (0,1), c2 = (1,0), c3 = (0,0), c4 = (1,1) over
        // the lex-sorted black points, giving a mixed class {1,2} and a
        // pure class {3,4} of equal size; the earlier one wins.
        let f = TruthTable::from_black_points(4, &[&[0, 1, 0, 1], &[1, 0, 0, 1]]).unwrap();
        let part = ecs_partition(&f).unwrap();
        assert_eq!(part.classes().len(), 2);
        let chosen = part.largest_class(2).unwrap();
        assert_eq!(chosen.members, vec![1, 2]);
        assert!(!chosen.pure);
        assert!(part.largest_class(3).is_none());
    }

    #[test]
    fn zero_weight_rejected() {
        let f = TruthTable::zeros(4).unwrap();
        assert!(matches!(ecs_partition(&f), Err(Error::ZeroWeight)));
    }

    #[test]
    fn ecs_invariant_under_permutation() {
        let f = weight2_fixture();
        let part = ecs_partition(&f).unwrap();
        // Swap variables 1 <-> 5 and check class sizes are preserved.
        let mut perm: Vec<u32> = (1..=11).collect();
        perm.swap(0, 4);
        let g = f.permuted(&perm);
        let part_g = ecs_partition(&g).unwrap();
        let mut sizes: Vec<usize> = part.classes().iter().map(|c| c.members.len()).collect();
        let mut sizes_g: Vec<usize> = part_g.classes().iter().map(|c| c.members.len()).collect();
        sizes.sort_unstable();
        sizes_g.sort_unstable();
        assert_eq!(sizes, sizes_g);
    }
}
