//! Fixed-weight function sampling, the without-replacement box process,
//! parity-path checks, and the sampling experiments built on them.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::certificate::min_certificate;
use crate::error::Error;
use crate::rational::{frac_to_f64, Frac};
use crate::report::{BoundInfo, ExperimentReport, Verdict, REPORT_SCHEMA_VERSION};
use crate::restriction::PathSpec;
use crate::rng::{phase_seed, SplitMix64};
use crate::table::{TruthTable, MAX_VARS};
use crate::Result;

/// Uniform sample from the n-variable functions of weight exactly m.
///
/// Dense weights use a partial Fisher-Yates shuffle of the table indices;
/// sparse weights (m <= 2^n / 64) use rejection sampling of distinct
/// indices. Both are exactly uniform; the split is for speed only.
pub fn sample_fixed_weight(n: u32, m: u64, seed: u64) -> Result<TruthTable> {
    if n == 0 || n > MAX_VARS {
        return Err(Error::TableTooLarge { n, max: MAX_VARS });
    }
    let size = 1u64 << n;
    if m > size {
        return Err(Error::WeightOutOfRange { m, n });
    }
    let mut rng = SplitMix64::new(seed);
    if m > size / 64 {
        let mut indices: Vec<u32> = (0..size as u32).collect();
        for i in 0..m {
            let j = i + rng.below(size - i);
            indices.swap(i as usize, j as usize);
        }
        TruthTable::from_on_set(n, &indices[..m as usize])
    } else {
        let mut chosen = std::collections::HashSet::with_capacity(m as usize);
        let mut on = Vec::with_capacity(m as usize);
        while on.len() < m as usize {
            let idx = rng.below(size) as u32;
            if chosen.insert(idx) {
                on.push(idx);
            }
        }
        TruthTable::from_on_set(n, &on)
    }
}

/// One run of the box process: the weight trajectory t_0 = m, t_1, ...,
/// t_k of a uniform weight-m function along a fixed query path, generated
/// by counting survivors of without-replacement draws instead of
/// materializing the function.
#[derive(Debug, Clone)]
pub struct BoxProcessTrace {
    pub n: u32,
    pub m: u64,
    pub path: PathSpec,
    /// t_0 ..= t_k.
    pub counts: Vec<u64>,
}

/// Maximum n for the count-only box process.
pub const BOX_PROCESS_MAX_N: u32 = 62;
/// Maximum weight for the count-only box process.
pub const BOX_PROCESS_MAX_M: u64 = 1 << 40;

/// Run the box process. Round j draws the t_{j-1} surviving vectors'
/// j-th queried coordinate without replacement from a box of 2^(n-j)
/// zeros and 2^(n-j) ones; the survivors counted by t_j are one
/// hypergeometric draw. The drawn count is distribution-identical for
/// either queried value, so the path's values only label the trace.
pub fn box_process(n: u32, m: u64, path: &PathSpec, seed: u64) -> Result<BoxProcessTrace> {
    if n == 0 || n > BOX_PROCESS_MAX_N {
        return Err(Error::domain(format!(
            "box process supports 1..={BOX_PROCESS_MAX_N} variables, got {n}"
        )));
    }
    if m > BOX_PROCESS_MAX_M {
        return Err(Error::domain(format!(
            "box process supports m <= 2^40, got {m}"
        )));
    }
    if n < 63 && m > 1u64 << n {
        return Err(Error::WeightOutOfRange { m, n });
    }
    if path.len() as u32 > n {
        return Err(Error::domain(format!(
            "path length {} exceeds n = {n}",
            path.len()
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let mut counts = Vec::with_capacity(path.len() + 1);
    counts.push(m);
    let mut t = m;
    for j in 1..=path.len() as u32 {
        let ones = 1u64 << (n - j);
        assert!(t <= 2 * ones, "trace exceeded the box size");
        t = crate::hypergeom::sample_hypergeometric(ones, ones, t, &mut rng);
        counts.push(t);
    }
    Ok(BoxProcessTrace {
        n,
        m,
        path: path.clone(),
        counts,
    })
}

/// Is each consecutive ratio w_j / w_{j-1} inside [ (1-d)/2, (1+d)/2 ]?
/// A zero predecessor makes the ratio undefined and the answer false.
pub fn counts_delta_parity(counts: &[u64], delta: Frac) -> bool {
    let a = *delta.numer() as u128;
    let b = *delta.denom() as u128;
    for w in counts.windows(2) {
        let (prev, next) = (w[0] as u128, w[1] as u128);
        if prev == 0 {
            return false;
        }
        // next/prev >= (b-a)/(2b) and <= (b+a)/(2b), cross-multiplied.
        if 2 * b * next < b.saturating_sub(a) * prev || 2 * b * next > (b + a) * prev {
            return false;
        }
    }
    true
}

/// Is the path delta-parity with respect to f (every consecutive
/// restriction weight ratio within the window)?
pub fn is_delta_parity_path(f: &TruthTable, path: &PathSpec, delta: Frac) -> Result<bool> {
    let mut weights = Vec::with_capacity(path.len() + 1);
    weights.push(f.weight());
    for j in 1..=path.len() {
        let rho = path.prefix_restriction(j);
        weights.push(f.restrict(&rho)?.weight());
    }
    Ok(counts_delta_parity(&weights, delta))
}

/// Is every path of length <= t delta-parity for f?
///
/// A path's step-j window condition depends only on the (parent, child)
/// restriction pair, so it suffices to check every restriction of size
/// < t against all of its one-variable extensions; restrictions are
/// enumerated once via subset DFS carrying restricted subtables.
pub fn is_t_delta_parity(f: &TruthTable, t: u32, delta: Frac) -> Result<bool> {
    if t > f.n() {
        return Err(Error::domain(format!(
            "path bound t = {t} exceeds n = {}",
            f.n()
        )));
    }
    fn rec(sub: &TruthTable, remaining: u32, delta: Frac, min_pos: u32) -> bool {
        if remaining == 0 || sub.n() == 0 {
            return true;
        }
        let w = sub.weight();
        if w == 0 {
            // Any extension step has an undefined ratio.
            return false;
        }
        // Window check for every one-variable extension.
        for pos in 0..sub.n() {
            let w1 = sub.cofactor(pos, true).weight();
            if !counts_delta_parity(&[w, w1], delta) || !counts_delta_parity(&[w, w - w1], delta) {
                return false;
            }
        }
        if remaining == 1 {
            return true;
        }
        // Recurse over canonical (ascending-position) extensions only;
        // each restriction set is visited exactly once.
        for pos in min_pos..sub.n() {
            for val in [false, true] {
                if !rec(&sub.cofactor(pos, val), remaining - 1, delta, pos) {
                    return false;
                }
            }
        }
        true
    }
    Ok(rec(f, t, delta, 0))
}

// ---- experiment: parity deviation bound (CLI id "lemma36") ---------------

/// Parameters for the parity-deviation experiment: how often does the box
/// process leave the (1 +- delta)/2 window somewhere along a fixed path?
#[derive(Debug, Clone)]
pub struct ParityDeviationParams {
    pub n: u32,
    pub m: u64,
    pub eps: f64,
    pub delta: Frac,
    pub path_len: u32,
    pub trials: u64,
    pub seed: u64,
}

/// Empirical non-parity frequency vs the analytic bound
/// 2*eps*log2(m)*exp(-delta^2*m^(1-eps)/2).
pub fn parity_deviation_experiment(p: &ParityDeviationParams) -> Result<ExperimentReport> {
    if p.eps <= 0.0 || p.eps >= 1.0 {
        return Err(Error::domain("eps must lie in (0,1)".to_string()));
    }
    let delta = frac_to_f64(&p.delta);
    if delta >= 1.0 {
        return Err(Error::domain("delta must lie below 1".to_string()));
    }
    let log2m = (p.m as f64).log2();
    if f64::from(p.path_len) > p.eps * log2m + 1e-9 {
        return Err(Error::domain(format!(
            "path length {} exceeds eps*log2(m) = {:.4}",
            p.path_len,
            p.eps * log2m
        )));
    }
    if delta > 1.0 / (2.0 * p.eps * log2m) + 1e-12 {
        return Err(Error::domain(format!(
            "delta {:.6} exceeds 1/(2*eps*log2(m)) = {:.6}",
            delta,
            1.0 / (2.0 * p.eps * log2m)
        )));
    }
    if p.trials == 0 {
        return Err(Error::domain("need at least one trial".to_string()));
    }

    let path = PathSpec::ones_prefix(p.path_len);
    let violations: u64 = (0..p.trials)
        .into_par_iter()
        .map(|trial| {
            let trace = box_process(p.n, p.m, &path, p.seed ^ trial)
                .expect("parameters were validated");
            u64::from(!counts_delta_parity(&trace.counts, p.delta))
        })
        .sum();

    let frequency = violations as f64 / p.trials as f64;
    let bound = 2.0 * p.eps * log2m * (-0.5 * delta * delta * (p.m as f64).powf(1.0 - p.eps)).exp();
    let std_error = (bound.min(1.0) * (1.0 - bound.min(1.0)) / p.trials as f64).sqrt();
    let threshold = bound + 3.0 * std_error;
    let verdict = if bound >= 1.0 {
        Verdict::Vacuous
    } else if frequency <= threshold {
        Verdict::Pass
    } else {
        Verdict::Fail
    };

    Ok(ExperimentReport {
        schema: REPORT_SCHEMA_VERSION,
        experiment: "lemma36".to_string(),
        params: json!({
            "n": p.n,
            "m": p.m,
            "eps": p.eps,
            "delta": p.delta.to_string(),
            "path_len": p.path_len,
        }),
        seed: p.seed,
        trials: p.trials,
        statistics: json!({
            "violations": violations,
            "frequency": frequency,
            "std_error": std_error,
            "threshold": threshold,
        }),
        bound: Some(BoundInfo {
            formula: "2*eps*log2(m)*exp(-delta^2*m^(1-eps)/2)".to_string(),
            value: bound,
        }),
        verdict,
    })
}

// ---- experiment: minimum certificates of random functions ("theorem12") ---

#[derive(Debug, Clone)]
pub struct MinCertificateParams {
    pub n: u32,
    pub m: u64,
    pub samples: u64,
    pub seed: u64,
    /// Path-length for the parity implication check.
    pub parity_t: u32,
    pub parity_delta: Frac,
}

impl MinCertificateParams {
    /// Defaults: t = 3 with the largest admissible window delta = 1/(2t).
    pub fn new(n: u32, m: u64, samples: u64, seed: u64) -> Self {
        MinCertificateParams {
            n,
            m,
            samples,
            seed,
            parity_t: 3,
            parity_delta: Frac::new(1, 6),
        }
    }
}

/// Samples fixed-weight functions, reporting the distribution of the
/// minimum certificate size, the explicit lower-bound threshold
/// log2(m/log2(n)) - 3*log2(log2(m/log2(n))) - 5 (marked vacuous when it
/// is not positive), and the parity implication check: every sample that
/// is (t, delta)-parity must have min certificate >= t.
pub fn min_certificate_experiment(p: &MinCertificateParams) -> Result<ExperimentReport> {
    let n = p.n;
    if !(2..=crate::lattice::DEFAULT_DP_LIMIT).contains(&n) {
        return Err(Error::domain(format!(
            "supported n is 2..={}, got {n}",
            crate::lattice::DEFAULT_DP_LIMIT
        )));
    }
    let log2n = f64::from(n).log2();
    if (p.m as f64) < 4.0 * log2n - 1e-9 || p.m > 1u64 << (n - 1) {
        return Err(Error::domain(format!(
            "weight m = {} outside [4*log2(n), 2^(n-1)]",
            p.m
        )));
    }
    if p.samples == 0 {
        return Err(Error::domain("need at least one sample".to_string()));
    }
    // Parity implication hypotheses: t <= log2(m) - 1 and delta <= 1/(2t).
    if f64::from(p.parity_t) > (p.m as f64).log2() - 1.0 + 1e-9 {
        return Err(Error::domain(format!(
            "parity_t = {} exceeds log2(m) - 1",
            p.parity_t
        )));
    }
    if p.parity_delta > Frac::new(1, 2 * u64::from(p.parity_t)) {
        return Err(Error::domain("parity_delta exceeds 1/(2t)".to_string()));
    }

    let per_sample: Vec<(u32, bool)> = (0..p.samples)
        .into_par_iter()
        .map(|i| {
            let f = sample_fixed_weight(n, p.m, p.seed ^ i).expect("validated");
            let mc = min_certificate(&f).expect("within lattice limit");
            let parity = is_t_delta_parity(&f, p.parity_t, p.parity_delta).expect("t <= n");
            (mc, parity)
        })
        .collect();

    let mut values: Vec<u32> = per_sample.iter().map(|&(mc, _)| mc).collect();
    values.sort_unstable();
    let median = values[(values.len() - 1) / 2];
    let mut histogram: Vec<(u32, u64)> = Vec::new();
    for &v in &values {
        match histogram.last_mut() {
            Some((value, count)) if *value == v => *count += 1,
            _ => histogram.push((v, 1)),
        }
    }

    let ratio = p.m as f64 / log2n;
    let threshold = ratio.log2() - 3.0 * ratio.log2().log2() - 5.0;
    let vacuous = threshold <= 0.0;
    let meeting = values.iter().filter(|&&v| f64::from(v) >= threshold).count();

    let parity_count = per_sample.iter().filter(|&&(_, p)| p).count() as u64;
    let implication_violations = per_sample
        .iter()
        .filter(|&&(mc, parity)| parity && mc < p.parity_t)
        .count() as u64;

    Ok(ExperimentReport {
        schema: REPORT_SCHEMA_VERSION,
        experiment: "theorem12".to_string(),
        params: json!({
            "n": n,
            "m": p.m,
            "parity_t": p.parity_t,
            "parity_delta": p.parity_delta.to_string(),
        }),
        seed: p.seed,
        trials: p.samples,
        statistics: json!({
            "histogram": histogram,
            "median": median,
            "threshold_vacuous": vacuous,
            "fraction_meeting_threshold":
                if vacuous { Value::Null } else { json!(meeting as f64 / values.len() as f64) },
            "parity_count": parity_count,
            "implication_violations": implication_violations,
        }),
        bound: Some(BoundInfo {
            formula: "log2(m/log2(n)) - 3*log2(log2(m/log2(n))) - 5".to_string(),
            value: threshold,
        }),
        verdict: if implication_violations == 0 {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
    })
}

// ---- box process vs direct sampling equivalence ---------------------------

#[derive(Debug, Clone)]
pub struct EquivalenceParams {
    pub n: u32,
    pub m: u64,
    pub path: PathSpec,
    pub trials: u64,
    pub seed: u64,
    pub significance: f64,
}

/// Two-sample chi-square comparison of the final box-process count against
/// the restricted weight of directly sampled functions along the same path.
pub fn box_direct_equivalence_experiment(p: &EquivalenceParams) -> Result<ExperimentReport> {
    if p.n > 16 {
        return Err(Error::domain(
            "equivalence check materializes truth tables; use n <= 16".to_string(),
        ));
    }
    if p.trials < 100 {
        return Err(Error::domain("need at least 100 trials".to_string()));
    }
    let k = p.path.len();
    let cap = p.m.min(1 << (p.n - k as u32)) as usize;

    let box_seed = phase_seed(p.seed, 0);
    let direct_seed = phase_seed(p.seed, 1);

    let mut box_counts = vec![0u64; cap + 1];
    for trial in 0..p.trials {
        let trace = box_process(p.n, p.m, &p.path, box_seed ^ trial)?;
        box_counts[*trace.counts.last().unwrap() as usize] += 1;
    }
    let full = p.path.prefix_restriction(k);
    let mut direct_counts = vec![0u64; cap + 1];
    for trial in 0..p.trials {
        let f = sample_fixed_weight(p.n, p.m, direct_seed ^ trial)?;
        let w = f.restrict(&full)?.weight();
        direct_counts[w as usize] += 1;
    }

    let (chi2, dof) = two_sample_chi_square(&box_counts, &direct_counts);
    let crit = chi_square_critical(dof, p.significance);
    let verdict = if chi2 <= crit { Verdict::Pass } else { Verdict::Fail };

    Ok(ExperimentReport {
        schema: REPORT_SCHEMA_VERSION,
        experiment: "box-equivalence".to_string(),
        params: json!({
            "n": p.n,
            "m": p.m,
            "path_len": k,
            "significance": p.significance,
        }),
        seed: p.seed,
        trials: p.trials,
        statistics: json!({
            "box_histogram": box_counts,
            "direct_histogram": direct_counts,
            "chi_square": chi2,
            "dof": dof,
            "critical_value": crit,
        }),
        bound: None,
        verdict,
    })
}

/// Pearson chi-square homogeneity statistic for two samples over the same
/// bins. Bins are pooled left-to-right until each pooled expected count
/// reaches 5; returns (statistic, degrees of freedom).
pub fn two_sample_chi_square(a: &[u64], b: &[u64]) -> (f64, u32) {
    assert_eq!(a.len(), b.len());
    let ta: u64 = a.iter().sum();
    let tb: u64 = b.iter().sum();
    let grand = (ta + tb) as f64;

    // Merge bins so pooled expectation per bin (for the smaller group) is
    // at least 5.
    let min_group = ta.min(tb) as f64;
    let mut bins: Vec<(u64, u64)> = Vec::new();
    let mut acc = (0u64, 0u64);
    for i in 0..a.len() {
        acc.0 += a[i];
        acc.1 += b[i];
        let pooled = (acc.0 + acc.1) as f64;
        if pooled * min_group / grand >= 5.0 {
            bins.push(acc);
            acc = (0, 0);
        }
    }
    if acc != (0, 0) {
        match bins.last_mut() {
            Some(last) => {
                last.0 += acc.0;
                last.1 += acc.1;
            }
            None => bins.push(acc),
        }
    }

    let mut chi2 = 0.0;
    for &(ca, cb) in &bins {
        let pooled = (ca + cb) as f64 / grand;
        let ea = pooled * ta as f64;
        let eb = pooled * tb as f64;
        if ea > 0.0 {
            chi2 += (ca as f64 - ea).powi(2) / ea;
        }
        if eb > 0.0 {
            chi2 += (cb as f64 - eb).powi(2) / eb;
        }
    }
    (chi2, bins.len().saturating_sub(1) as u32)
}

/// Upper critical value of the chi-square distribution.
pub fn chi_square_critical(dof: u32, significance: f64) -> f64 {
    use statrs::distribution::{ChiSquared, ContinuousCDF};
    if dof == 0 {
        return 0.0;
    }
    ChiSquared::new(f64::from(dof))
        .expect("positive dof")
        .inverse_cdf(1.0 - significance)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_weight_edges() {
        let all = sample_fixed_weight(3, 8, 5).unwrap();
        assert_eq!(all, TruthTable::ones(3).unwrap());
        let none = sample_fixed_weight(3, 0, 5).unwrap();
        assert_eq!(none, TruthTable::zeros(3).unwrap());
        assert!(sample_fixed_weight(3, 9, 5).is_err());
    }

    #[test]
    fn fixed_weight_is_exact_for_every_seed() {
        for seed in 0..50 {
            assert_eq!(sample_fixed_weight(10, 77, seed).unwrap().weight(), 77);
            assert_eq!(sample_fixed_weight(5, 20, seed).unwrap().weight(), 20);
        }
    }

    #[test]
    fn fixed_weight_uniform_chi_square() {
        // All 28 two-element on-sets of a 3-variable function, 28000
        // trials, significance 0.001 (27 dof).
        let trials = 28_000u64;
        let mut counts = std::collections::HashMap::new();
        for seed in 0..trials {
            let f = sample_fixed_weight(3, 2, phase_seed(1, 0) ^ seed).unwrap();
            let on = f.on_set();
            *counts.entry((on[0], on[1])).or_insert(0u64) += 1;
        }
        assert_eq!(counts.len(), 28);
        let expected = trials as f64 / 28.0;
        let chi2: f64 = counts
            .values()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        let crit = chi_square_critical(27, 0.001);
        assert!(chi2 <= crit, "chi2 = {chi2:.2}, crit = {crit:.2}");
    }

    #[test]
    fn box_process_edges() {
        let empty = box_process(10, 100, &PathSpec::ones_prefix(0), 3).unwrap();
        assert_eq!(empty.counts, vec![100]);
        // Full box: the first round always keeps exactly half.
        for seed in 0..20 {
            let t = box_process(6, 64, &PathSpec::ones_prefix(1), seed).unwrap();
            assert_eq!(t.counts[1], 32);
        }
    }

    #[test]
    fn box_process_counts_are_monotone_and_capped() {
        for seed in 0..200u64 {
            let t = box_process(12, 600, &PathSpec::ones_prefix(6), seed).unwrap();
            for j in 1..t.counts.len() {
                assert!(t.counts[j] <= t.counts[j - 1]);
                assert!(t.counts[j] <= 1 << (12 - j as u32));
            }
        }
    }

    #[test]
    fn box_process_first_round_mean() {
        // E[t_1] = m/2; 100k trials at n=20, m=4096. The per-draw std is
        // ~sqrt(m)/2 = 32, so the mean-of-means tolerance 3*32/sqrt(1e5)
        // is ~0.3.
        let trials = 100_000u64;
        let total: u64 = (0..trials)
            .into_par_iter()
            .map(|seed| {
                box_process(20, 4096, &PathSpec::ones_prefix(1), 999 ^ seed)
                    .unwrap()
                    .counts[1]
            })
            .sum();
        let mean = total as f64 / trials as f64;
        assert!((mean - 2048.0).abs() < 0.32, "mean = {mean}");
    }

    #[test]
    fn delta_parity_path_examples() {
        let xor3 = TruthTable::from_index_fn(3, |i| i.count_ones() % 2 == 1).unwrap();
        let p1 = PathSpec::new(vec![(2, true)]).unwrap();
        assert!(is_delta_parity_path(&xor3, &p1, Frac::new(0, 1)).unwrap());

        let and2 = TruthTable::from_on_set(2, &[3]).unwrap();
        let p = PathSpec::new(vec![(1, true)]).unwrap();
        assert!(!is_delta_parity_path(&and2, &p, Frac::new(1, 2)).unwrap());
    }

    #[test]
    fn delta_parity_path_matches_direct_recomputation() {
        let f = sample_fixed_weight(12, 512, 31).unwrap();
        let mut rng = SplitMix64::new(17);
        for _ in 0..50 {
            let mut vars: Vec<u32> = (1..=12).collect();
            for i in 0..4usize {
                let j = i + rng.below((12 - i) as u64) as usize;
                vars.swap(i, j);
            }
            let steps: Vec<(u32, bool)> =
                vars[..4].iter().map(|&v| (v, rng.bool())).collect();
            let path = PathSpec::new(steps).unwrap();
            let delta = Frac::new(1, 5);
            // Direct recomputation from restrict + weight.
            let mut ok = true;
            let mut prev = f.weight();
            for j in 1..=path.len() {
                let w = f.restrict(&path.prefix_restriction(j)).unwrap().weight();
                if prev == 0 || 10 * w < 4 * prev || 10 * w > 6 * prev {
                    ok = false;
                    break;
                }
                prev = w;
            }
            assert_eq!(is_delta_parity_path(&f, &path, delta).unwrap(), ok);
        }
    }

    #[test]
    fn t_delta_parity_examples() {
        for n in 2..=8u32 {
            let xor = TruthTable::from_index_fn(n, |i| i.count_ones() % 2 == 1).unwrap();
            assert!(is_t_delta_parity(&xor, n - 1, Frac::new(0, 1)).unwrap());
        }
        let and2 = TruthTable::from_on_set(2, &[3]).unwrap();
        assert!(!is_t_delta_parity(&and2, 1, Frac::new(9, 10)).unwrap());
    }

    #[test]
    fn t_delta_parity_matches_path_enumeration() {
        // Oracle: enumerate every ordered path of length <= t explicitly.
        fn oracle(f: &TruthTable, t: u32, delta: Frac) -> bool {
            fn rec(f: &TruthTable, steps: &mut Vec<(u32, bool)>, left: u32, delta: Frac) -> bool {
                let path = PathSpec::new(steps.clone()).unwrap();
                if !is_delta_parity_path(f, &path, delta).unwrap() {
                    return false;
                }
                if left == 0 {
                    return true;
                }
                for var in 1..=f.n() {
                    if steps.iter().any(|&(v, _)| v == var) {
                        continue;
                    }
                    for val in [false, true] {
                        steps.push((var, val));
                        let ok = rec(f, steps, left - 1, delta);
                        steps.pop();
                        if !ok {
                            return false;
                        }
                    }
                }
                true
            }
            rec(f, &mut Vec::new(), t, delta)
        }
        let mut rng = SplitMix64::new(6);
        for _ in 0..12 {
            let n = 4 + rng.below(3) as u32; // 4..=6
            let m = 1 + rng.below((1 << n) - 1);
            let f = sample_fixed_weight(n, m, rng.next_u64()).unwrap();
            for t in 1..=3u32 {
                let delta = Frac::new(1 + rng.below(3), 6);
                assert_eq!(
                    is_t_delta_parity(&f, t, delta).unwrap(),
                    oracle(&f, t, delta),
                    "n={n} m={m} t={t} delta={delta}"
                );
            }
        }
    }

    #[test]
    fn zero_delta_parity_means_exact_halving() {
        // (t, 0)-parity iff every single-variable extension of every
        // restriction of size < t splits the weight exactly in half.
        let xor4 = TruthTable::from_index_fn(4, |i| i.count_ones() % 2 == 1).unwrap();
        assert!(is_t_delta_parity(&xor4, 3, Frac::new(0, 1)).unwrap());
        let skew = sample_fixed_weight(4, 7, 2).unwrap(); // odd weight cannot halve
        assert!(!is_t_delta_parity(&skew, 1, Frac::new(0, 1)).unwrap());
    }

    #[test]
    fn parity_deviation_vacuous_and_trivial_cases() {
        // Large delta with a short path: bound above 1, marked vacuous.
        let report = parity_deviation_experiment(&ParityDeviationParams {
            n: 16,
            m: 64,
            eps: 0.5,
            delta: Frac::new(1, 6),
            path_len: 3,
            trials: 200,
            seed: 5,
        })
        .unwrap();
        assert_eq!(report.verdict, Verdict::Vacuous);

        // Full weight halves exactly every round: frequency 0 even at
        // delta = 0.
        let report = parity_deviation_experiment(&ParityDeviationParams {
            n: 12,
            m: 1 << 12,
            eps: 0.5,
            delta: Frac::new(0, 1),
            path_len: 6,
            trials: 500,
            seed: 5,
        })
        .unwrap();
        let stats = report.statistics;
        assert_eq!(stats["violations"], 0);
    }

    #[test]
    fn parity_deviation_rejects_bad_domain() {
        let base = ParityDeviationParams {
            n: 20,
            m: 1024,
            eps: 0.5,
            delta: Frac::new(1, 10),
            path_len: 5,
            trials: 10,
            seed: 0,
        };
        let too_long = ParityDeviationParams { path_len: 6, ..base.clone() };
        assert!(parity_deviation_experiment(&too_long).is_err());
        let too_wide = ParityDeviationParams { delta: Frac::new(1, 4), ..base };
        assert!(parity_deviation_experiment(&too_wide).is_err());
    }

    #[test]
    fn equivalence_experiment_passes_at_tiny_scale() {
        let report = box_direct_equivalence_experiment(&EquivalenceParams {
            n: 4,
            m: 4,
            path: PathSpec::new(vec![(1, true), (2, false)]).unwrap(),
            trials: 20_000,
            seed: 11,
            significance: 0.001,
        })
        .unwrap();
        assert_eq!(report.verdict, Verdict::Pass, "{}", report.to_json());
    }

    #[test]
    fn box_distribution_is_path_invariant() {
        // Two different fixed paths produce the same t_k distribution.
        let trials = 20_000u64;
        let path_a = PathSpec::new(vec![(1, true), (2, true)]).unwrap();
        let path_b = PathSpec::new(vec![(3, false), (1, true)]).unwrap();
        let mut counts_a = vec![0u64; 5];
        let mut counts_b = vec![0u64; 5];
        for trial in 0..trials {
            let a = box_process(4, 4, &path_a, phase_seed(21, 0) ^ trial).unwrap();
            counts_a[*a.counts.last().unwrap() as usize] += 1;
            let b = box_process(4, 4, &path_b, phase_seed(21, 1) ^ trial).unwrap();
            counts_b[*b.counts.last().unwrap() as usize] += 1;
        }
        let (chi2, dof) = two_sample_chi_square(&counts_a, &counts_b);
        assert!(chi2 <= chi_square_critical(dof, 0.001));
    }

    #[test]
    fn min_certificate_trend_report_shape() {
        let report =
            min_certificate_experiment(&MinCertificateParams::new(10, 128, 20, 3)).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
        assert!(report.statistics["median"].as_u64().is_some());
    }

    #[test]
    fn min_certificate_threshold_vacuous_case() {
        // n = 16 is beyond the lattice limit, so evaluate the threshold
        // formula directly: log2(32768/4) - 3*log2(log2(32768/4)) - 5 < 0.
        let ratio: f64 = 32768.0 / 16f64.log2();
        let threshold = ratio.log2() - 3.0 * ratio.log2().log2() - 5.0;
        assert!(threshold < 0.0);
        // And the report marks vacuity at a reachable size.
        let report =
            min_certificate_experiment(&MinCertificateParams::new(14, 1 << 13, 5, 3)).unwrap();
        assert_eq!(report.statistics["threshold_vacuous"], Value::Bool(true));
    }
}
