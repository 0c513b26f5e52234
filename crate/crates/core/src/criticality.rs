//! Restriction-tail analysis: exact tail probabilities of the worst-case
//! depth under p-random restrictions, criticality estimation from a grid
//! of p values, and the associated bound calculators.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::dnf::DnfFormula;
use crate::error::Error;
use crate::exact::depth_table;
use crate::lattice::{scan_states, RestrictionLattice};
use crate::rational::Frac;
use crate::strategy::{dnf_sequential_strategy, measure_cost, CostReport, MeasureMode};
use crate::table::TruthTable;
use crate::Result;

/// Exact tail enumeration is a 3^n sweep; this cap keeps it interactive.
pub const TAIL_LIMIT: u32 = 12;

/// Exact tail of the restricted worst-case depth: `tail[t]` =
/// Pr over p-random restrictions that D(f|rho) >= t, for t = 0..=n.
#[derive(Debug, Clone)]
pub struct RestrictionTail {
    pub p: Frac,
    pub tail: Vec<BigRational>,
}

impl RestrictionTail {
    /// `tail[0]`, which sums every restriction's probability; exactly 1
    /// when the enumeration is correct.
    pub fn total_mass(&self) -> &BigRational {
        &self.tail[0]
    }

    pub fn tail_f64(&self, t: usize) -> f64 {
        self.tail[t].to_f64().unwrap_or(0.0)
    }
}

/// Depth counts per free-variable count: counts[k][d] = number of
/// restriction states with k free variables and restricted depth d.
/// All grid tails reuse one sweep.
struct DepthCounts {
    n: u32,
    counts: Vec<Vec<u64>>,
}

fn depth_counts(f: &TruthTable) -> Result<DepthCounts> {
    let n = f.n();
    if n > TAIL_LIMIT {
        return Err(Error::DpLimitExceeded { n, limit: TAIL_LIMIT });
    }
    let lat = RestrictionLattice::build_with_limit(f, TAIL_LIMIT)?;
    let depth = depth_table(&lat);
    let mut counts = vec![vec![0u64; n as usize + 1]; n as usize + 1];
    scan_states(n, |state, free_mask, _| {
        let k = free_mask.count_ones() as usize;
        counts[k][usize::from(depth[state])] += 1;
    });
    Ok(DepthCounts { n, counts })
}

impl DepthCounts {
    /// Exact tails for one p: a restriction with k free variables has
    /// probability p^k * ((1-p)/2)^(n-k).
    fn tails(&self, p: Frac) -> RestrictionTail {
        let n = self.n as usize;
        let p_rat = BigRational::new(BigInt::from(*p.numer()), BigInt::from(*p.denom()));
        let fix_rat = (BigRational::one() - &p_rat) / BigRational::from_integer(2.into());
        // weight_by_free[k] = p^k * ((1-p)/2)^(n-k)
        let weight_by_free: Vec<BigRational> = (0..=n)
            .map(|k| {
                let mut w = BigRational::one();
                for _ in 0..k {
                    w *= &p_rat;
                }
                for _ in k..n {
                    w *= &fix_rat;
                }
                w
            })
            .collect();
        let tail: Vec<BigRational> = (0..=n)
            .map(|t| {
                let mut acc = BigRational::zero();
                for (k, w) in weight_by_free.iter().enumerate() {
                    let states: u64 = self.counts[k][t..].iter().sum();
                    if states > 0 {
                        acc += w * BigRational::from_integer(states.into());
                    }
                }
                acc
            })
            .collect();
        RestrictionTail { p, tail }
    }
}

/// Exact restriction tail for one p (n <= 12, p rational in [0, 1]).
pub fn restriction_tail(f: &TruthTable, p: Frac) -> Result<RestrictionTail> {
    if p > Frac::from_integer(1) {
        return Err(Error::domain(format!("p = {p} outside [0, 1]")));
    }
    Ok(depth_counts(f)?.tails(p))
}

/// The default estimation grid p = 1/2, 1/4, ..., 1/2^10.
pub fn default_p_grid() -> Vec<Frac> {
    (1..=10).map(|k| Frac::new(1, 1 << k)).collect()
}

/// Least lambda consistent with the criticality inequality on a grid of
/// p values: the max over grid p and t >= 1 of `tail[t]^(1/t) / p`, clamped
/// below at 1. A finite grid can only under-estimate the true criticality.
#[derive(Debug, Clone)]
pub struct LambdaEstimate {
    pub lambda: f64,
    pub grid: Vec<Frac>,
    /// (p, t) pairs attaining the maximum.
    pub witnesses: Vec<(Frac, u32)>,
}

pub fn lambda_estimate(f: &TruthTable, grid: &[Frac]) -> Result<LambdaEstimate> {
    if grid.is_empty() {
        return Err(Error::domain("empty p grid".to_string()));
    }
    let counts = depth_counts(f)?;
    let mut lambda = 1.0f64;
    let mut candidates: Vec<(Frac, u32, f64)> = Vec::new();
    for &p in grid {
        if p > Frac::from_integer(1) || p.is_zero() {
            return Err(Error::domain(format!("grid value {p} outside (0, 1]")));
        }
        let tails = counts.tails(p);
        let p_f = *p.numer() as f64 / *p.denom() as f64;
        for t in 1..=counts.n {
            let tail = tails.tail_f64(t as usize);
            if tail > 0.0 {
                let cand = tail.powf(1.0 / f64::from(t)) / p_f;
                candidates.push((p, t, cand));
                if cand > lambda {
                    lambda = cand;
                }
            }
        }
    }
    let witnesses = candidates
        .iter()
        .filter(|&&(_, _, c)| c >= lambda * (1.0 - 1e-12))
        .map(|&(p, t, _)| (p, t))
        .collect();
    Ok(LambdaEstimate {
        lambda,
        grid: grid.to_vec(),
        witnesses,
    })
}

/// n(1 - 1/lambda) + 2*sqrt(n/lambda): the expected cost of restricting
/// and then querying optimally, for a lambda-critical function.
pub fn restriction_cost_bound(n: u32, lambda: f64) -> Result<f64> {
    if n == 0 || lambda < 1.0 {
        return Err(Error::domain(format!(
            "need n >= 1 and lambda >= 1, got n = {n}, lambda = {lambda}"
        )));
    }
    let nf = f64::from(n);
    Ok(nf * (1.0 - 1.0 / lambda) + 2.0 * (nf / lambda).sqrt())
}

/// Criticality-class bound shapes. The O-constants are not pinned by the
/// theory, so the caller supplies c; values are for display only.
#[derive(Debug, Clone, Copy)]
pub enum CriticalityBoundKind {
    /// CNF/DNF of width w: n(1 - 1/(c*w)).
    Width { w: u32 },
    /// CNF/DNF of size s: n(1 - 1/(c*log2 s)).
    Size { s: u64 },
    /// Depth-d size-s circuit: n(1 - 1/(c*log2 s)^(d-1)).
    Circuit { d: u32, s: u64 },
    /// Depth-d size-s formula: n(1 - 1/((c/d)*log2 s)^(d-1)).
    Formula { d: u32, s: u64 },
}

pub fn criticality_class_bound(kind: CriticalityBoundKind, n: u32, c: f64) -> Result<f64> {
    if n == 0 || c <= 0.0 {
        return Err(Error::domain("need n >= 1 and c > 0".to_string()));
    }
    let nf = f64::from(n);
    let value = match kind {
        CriticalityBoundKind::Width { w } => {
            if w == 0 {
                return Err(Error::domain("width must be positive".to_string()));
            }
            nf * (1.0 - 1.0 / (c * f64::from(w)))
        }
        CriticalityBoundKind::Size { s } => {
            if s < 2 {
                return Err(Error::domain("size must be at least 2".to_string()));
            }
            nf * (1.0 - 1.0 / (c * (s as f64).log2()))
        }
        CriticalityBoundKind::Circuit { d, s } => {
            if d < 2 {
                return Err(Error::domain(
                    "circuit depth must be at least 2 (the exponent d-1 degenerates)".to_string(),
                ));
            }
            if s < 2 {
                return Err(Error::domain("size must be at least 2".to_string()));
            }
            nf * (1.0 - 1.0 / (c * (s as f64).log2()).powi(d as i32 - 1))
        }
        CriticalityBoundKind::Formula { d, s } => {
            if d < 2 {
                return Err(Error::domain(
                    "formula depth must be at least 2 (the exponent d-1 degenerates)".to_string(),
                ));
            }
            if s < 2 {
                return Err(Error::domain("size must be at least 2".to_string()));
            }
            nf * (1.0 - 1.0 / ((c / f64::from(d)) * (s as f64).log2()).powi(d as i32 - 1))
        }
    };
    Ok(value)
}

/// Result of the sequential gate-evaluation check on a DNF.
#[derive(Debug, Clone)]
pub struct GateCheckReport {
    pub cost: CostReport,
    /// 2 * (terms + 1): two expected queries per gate, counting the OR.
    pub bound: f64,
    pub pass: bool,
}

/// Measure the term-by-term strategy exactly and compare against
/// 2 * (size + 1).
pub fn sequential_gate_check(formula: &DnfFormula) -> Result<GateCheckReport> {
    let f = formula.to_table()?;
    let strategy = dnf_sequential_strategy(formula);
    let cost = measure_cost(&strategy, &f, MeasureMode::Exact)?;
    let bound = 2.0 * (formula.size() as f64 + 1.0);
    let pass = cost.estimate.mean() <= bound + 1e-9;
    Ok(GateCheckReport { cost, bound, pass })
}
