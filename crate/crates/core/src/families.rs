//! Named function families and constructions.

use crate::certificate::min_certificate;
use crate::dnf::{DnfFormula, DnfTerm};
use crate::error::Error;
use crate::rational::{frac_to_f64, Frac};
use crate::sampling::sample_fixed_weight;
use crate::table::{TruthTable, MAX_VARS};
use crate::Result;

/// Standard function kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedKind {
    And,
    Or,
    Xor,
    /// Unique black point at the given table index.
    Point(u32),
    Constant(bool),
}

pub fn make_named(kind: NamedKind, n: u32) -> Result<TruthTable> {
    if n == 0 {
        return Err(Error::domain("named functions need n >= 1".to_string()));
    }
    match kind {
        NamedKind::And => TruthTable::from_index_fn(n, |idx| idx == (1 << n) - 1),
        NamedKind::Or => TruthTable::from_index_fn(n, |idx| idx != 0),
        NamedKind::Xor => TruthTable::from_index_fn(n, |idx| idx.count_ones() % 2 == 1),
        NamedKind::Point(z) => {
            if u64::from(z) >= 1u64 << n {
                return Err(Error::domain(format!("point {z} out of range for n = {n}")));
            }
            TruthTable::from_on_set(n, &[z])
        }
        NamedKind::Constant(true) => TruthTable::ones(n),
        NamedKind::Constant(false) => TruthTable::zeros(n),
    }
}

/// The penalty shoot-out function on 2*rounds + 1 variables.
///
/// Round i is decided iff x_{2i-1} = x_{2i}, in which case the output is
/// x_{2i-1} for the first decided round; if no round decides, the output
/// is the tie-break bit x_{2n+1}. With this encoding a won round means
/// "exactly one side scored", scoring reads x_{2i-1} = 1 for one side and
/// x_{2i} = 0 for the other, and the function is monotone and balanced.
pub fn pso(rounds: u32) -> Result<TruthTable> {
    let n = 2 * rounds + 1;
    if n > MAX_VARS {
        return Err(Error::TableTooLarge { n, max: MAX_VARS });
    }
    TruthTable::from_index_fn(n, |idx| {
        for i in 1..=rounds {
            let a = TruthTable::var_bit(idx, 2 * i - 1);
            let b = TruthTable::var_bit(idx, 2 * i);
            if a == b {
                return a;
            }
        }
        TruthTable::var_bit(idx, n)
    })
}

/// Block composition (F o G)(x) = F(G(x^(1)), ..., G(x^(n))) on n*m
/// variables; block k covers variables (k-1)m+1 ..= km.
pub fn compose(f: &TruthTable, g: &TruthTable) -> Result<TruthTable> {
    let n = f.n();
    let m = g.n();
    let total = n.checked_mul(m).filter(|&t| t <= MAX_VARS).ok_or(
        Error::TableTooLarge {
            n: n.saturating_mul(m),
            max: MAX_VARS,
        },
    )?;
    let block_mask = (1u32 << m) - 1;
    TruthTable::from_index_fn(total, |idx| {
        let mut outer = 0u32;
        for k in 0..n {
            let chunk = (idx >> (k * m)) & block_mask;
            if g.get(chunk) {
                outer |= 1 << k;
            }
        }
        f.get(outer)
    })
}

/// A hard wide-DNF instance: f = OR over h disjoint w-variable blocks of a
/// fixed-weight inner function g chosen (best of `candidates` samples) to
/// maximize its minimum certificate size d.
#[derive(Debug, Clone)]
pub struct DisjointBlockDnf {
    pub n: u32,
    pub w: u32,
    /// Inner weight, ceil(2^w / 2n).
    pub m: u64,
    /// Block count, floor(n / w).
    pub h: u32,
    pub g: TruthTable,
    /// min over y of C_y(g) for the selected g.
    pub d: u32,
    /// Pr[g = 1] = m / 2^w.
    pub p: Frac,
    pub formula: DnfFormula,
}

pub fn disjoint_block_dnf(n: u32, w: u32, candidates: u32, seed: u64) -> Result<DisjointBlockDnf> {
    if n == 0 || n > MAX_VARS {
        return Err(Error::domain(format!("n = {n} outside 1..={MAX_VARS}")));
    }
    if candidates == 0 {
        return Err(Error::domain("need at least one candidate".to_string()));
    }
    let two_log_n = 2.0 * (n as f64).log2();
    if (w as f64) < two_log_n - 1e-9 || w > n {
        return Err(Error::domain(format!(
            "w = {w} outside [2*log2(n), n] = [{two_log_n:.3}, {n}]"
        )));
    }
    if w > crate::lattice::DEFAULT_DP_LIMIT {
        return Err(Error::DpLimitExceeded {
            n: w,
            limit: crate::lattice::DEFAULT_DP_LIMIT,
        });
    }
    let m = (1u64 << w).div_ceil(2 * n as u64);
    let h = n / w;

    // Best-of-k candidate search; winner maximizes d, ties to the lowest
    // candidate index.
    let mut best: Option<(u32, TruthTable)> = None;
    for i in 0..candidates {
        let g = sample_fixed_weight(w, m, seed ^ u64::from(i))?;
        let d = min_certificate(&g)?;
        if best.as_ref().is_none_or(|(bd, _)| d > *bd) {
            best = Some((d, g));
        }
    }
    let (d, g) = best.unwrap();

    let size_cap = (1u64 << w).div_ceil(w as u64);
    debug_assert!(m * u64::from(h) <= size_cap);

    // One term per black point of g per block, block-major.
    let block_full = (1u32 << w) - 1;
    let mut terms = Vec::with_capacity((m * u64::from(h)) as usize);
    for k in 0..h {
        let shift = k * w;
        for &y in &g.on_set() {
            terms.push(DnfTerm {
                pos: y << shift,
                neg: (!y & block_full) << shift,
            });
        }
    }
    let formula = DnfFormula::new(n, terms)?;
    Ok(DisjointBlockDnf {
        n,
        w,
        m,
        h,
        g,
        d,
        p: Frac::new(m, 1u64 << w),
        formula,
    })
}

/// Cost bounds for the instance: lower = h*d*(1-p)^h (every zero-error
/// algorithm pays d per block whenever all blocks are 0), upper =
/// h*(log2(m) + 2) (per-block reasonable evaluation).
pub fn disjoint_block_bounds(inst: &DisjointBlockDnf) -> (f64, f64) {
    let p = frac_to_f64(&inst.p);
    let lower = f64::from(inst.h) * f64::from(inst.d) * (1.0 - p).powi(inst.h as i32);
    let upper = f64::from(inst.h) * ((inst.m as f64).log2() + 2.0);
    (lower, upper)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{dave_exact, worst_depth};
    use crate::rational::Dyadic;

    #[test]
    fn named_weights() {
        assert_eq!(make_named(NamedKind::Xor, 3).unwrap().weight(), 4);
        assert_eq!(make_named(NamedKind::And, 4).unwrap().weight(), 1);
        let point = make_named(NamedKind::Point(9), 4).unwrap();
        assert_eq!(point.weight(), 1);
        assert_eq!(point.on_set(), vec![9]);
        let and4 = make_named(NamedKind::And, 4).unwrap();
        assert_eq!(and4.on_set(), vec![15]);
    }

    #[test]
    fn pso_zero_rounds_is_identity() {
        let f = pso(0).unwrap();
        assert_eq!(f.n(), 1);
        assert!(!f.get(0));
        assert!(f.get(1));
    }

    #[test]
    fn pso_is_monotone_and_balanced() {
        for r in 0..=5u32 {
            let f = pso(r).unwrap();
            let n = f.n();
            assert_eq!(f.weight(), 1 << (n - 1), "rounds={r}");
            for idx in 0..f.size() as u32 {
                for var in 1..=n {
                    let bit = 1u32 << (var - 1);
                    if idx & bit == 0 {
                        // Raising any coordinate cannot lower the output.
                        assert!(
                            !f.get(idx) || f.get(idx | bit),
                            "monotonicity fails at rounds={r} idx={idx} var={var}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn pso_exact_table() {
        for r in 0..=5u32 {
            let f = pso(r).unwrap();
            assert_eq!(worst_depth(&f).unwrap(), 2 * r + 1, "rounds={r}");
            // 4 - 3/2^r over 2r+1 variables.
            let n = 2 * r + 1;
            let expect = Dyadic::new((4u128 << n) - (3u128 << (r + 1)), n);
            assert_eq!(dave_exact(&f).unwrap(), expect, "rounds={r}");
        }
    }

    #[test]
    fn compose_examples() {
        let or2 = make_named(NamedKind::Or, 2).unwrap();
        let and2 = make_named(NamedKind::And, 2).unwrap();
        let f = compose(&or2, &and2).unwrap();
        assert_eq!(f.n(), 4);
        assert_eq!(f.weight(), 7);

        let xor2 = make_named(NamedKind::Xor, 2).unwrap();
        let xor4 = make_named(NamedKind::Xor, 4).unwrap();
        assert_eq!(compose(&xor2, &xor2).unwrap(), xor4);

        let id = pso(0).unwrap();
        let g = make_named(NamedKind::Xor, 3).unwrap();
        assert_eq!(compose(&g, &id).unwrap(), g);
    }

    #[test]
    fn block_dnf_structure() {
        let inst = disjoint_block_dnf(16, 8, 8, 7).unwrap();
        assert_eq!(inst.m, 8);
        assert_eq!(inst.h, 2);
        assert_eq!(inst.formula.width(), 8);
        assert_eq!(inst.formula.size(), 16);
        assert!(inst.formula.size() as u64 <= (1u64 << 8).div_ceil(8));
        assert!(inst.p <= Frac::new(1, 16));
        let (lower, upper) = disjoint_block_bounds(&inst);
        assert!(lower <= upper);
        // h(log2 m + 2) also sits below n(1 - (log2 n - 2)/w) here.
        assert!(upper <= 16.0 * (1.0 - (4.0 - 2.0) / 8.0) + 1e-9);
        // The formula really computes OR of g over the two blocks.
        let table = inst.formula.to_table().unwrap();
        for idx in (0..1u32 << 16).step_by(97) {
            let b0 = inst.g.get(idx & 0xFF);
            let b1 = inst.g.get(idx >> 8);
            assert_eq!(table.get(idx), b0 || b1);
        }
    }

    #[test]
    fn block_dnf_size_cap_across_shapes() {
        for (n, w) in [(9u32, 7u32), (12, 8), (16, 8), (16, 9), (20, 10), (24, 10)] {
            let inst = disjoint_block_dnf(n, w, 2, 1).unwrap();
            let cap = (1u64 << w).div_ceil(w as u64);
            assert!(inst.m * u64::from(inst.h) <= cap, "n={n} w={w}");
            assert!(inst.p <= Frac::new(1, n as u64), "n={n} w={w}");
            let (lower, upper) = disjoint_block_bounds(&inst);
            assert!(lower <= upper + 1e-9, "n={n} w={w}");
        }
    }

    #[test]
    fn block_dnf_rejects_bad_width() {
        assert!(disjoint_block_dnf(16, 7, 4, 0).is_err()); // w < 2 log2 n
        assert!(disjoint_block_dnf(16, 17, 4, 0).is_err()); // w > n
    }

    #[test]
    fn degenerate_inner_gives_zero_lower_bound() {
        let inst = DisjointBlockDnf {
            d: 0,
            ..disjoint_block_dnf(16, 8, 4, 3).unwrap()
        };
        let (lower, _) = disjoint_block_bounds(&inst);
        assert_eq!(lower, 0.0);
    }
}
