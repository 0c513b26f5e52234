//! Composite experiments behind the CLI's `experiment` subcommand.
//! The sampling module owns the box-process experiments; this module adds
//! the construction, criticality and gate-cost harnesses plus the exact
//! shoot-out table.

use rayon::prelude::*;
use serde_json::json;

use crate::criticality::{
    default_p_grid, lambda_estimate, restriction_cost_bound, restriction_tail,
    sequential_gate_check, TAIL_LIMIT,
};
use crate::dnf::DnfFormula;
use crate::error::Error;
use crate::exact::{dave_exact, dave_exact_with_limit, worst_depth_with_limit};
use crate::families::{disjoint_block_bounds, disjoint_block_dnf, pso};
use crate::rational::Dyadic;
use crate::report::{BoundInfo, ExperimentReport, Verdict, REPORT_SCHEMA_VERSION};
use crate::rng::SplitMix64;
use crate::strategy::{block_or_strategy, measure_cost, MeasureMode};
use crate::Result;

/// Build a hard wide-DNF instance, measure the per-block sequential
/// strategy exactly, and check the bound sandwich plus the structural
/// facts about the construction.
pub fn block_dnf_experiment(n: u32, w: u32, candidates: u32, seed: u64) -> Result<ExperimentReport> {
    let inst = disjoint_block_dnf(n, w, candidates, seed)?;
    let f = inst.formula.to_table()?;
    let strategy = block_or_strategy(&inst.g, inst.h, inst.n)?;
    let cost = measure_cost(&strategy, &f, MeasureMode::Exact)?;
    let (lower, upper) = disjoint_block_bounds(&inst);
    let measured = cost.estimate.mean();

    let size_cap = (1u64 << w).div_ceil(u64::from(w));
    let structural = inst.formula.width() == w
        && (inst.formula.size() as u64) == inst.m * u64::from(inst.h)
        && (inst.formula.size() as u64) <= size_cap
        && inst.p <= crate::rational::Frac::new(1, u64::from(n));
    let sandwiched = lower <= measured + 1e-9 && measured <= upper + 1e-9;

    Ok(ExperimentReport {
        schema: REPORT_SCHEMA_VERSION,
        experiment: "theorem13".to_string(),
        params: json!({"n": n, "w": w, "candidates": candidates}),
        seed,
        trials: u64::from(candidates),
        statistics: json!({
            "m": inst.m,
            "h": inst.h,
            "width": inst.formula.width(),
            "size": inst.formula.size(),
            "size_cap": size_cap,
            "d": inst.d,
            "p": inst.p.to_string(),
            "lower": lower,
            "upper": upper,
            "measured": measured,
            "measured_fraction": cost.estimate.exact().map(|d| d.fraction_string()),
            "structural_pass": structural,
        }),
        bound: Some(BoundInfo {
            formula: "h*d*(1-p)^h <= cost <= h*(log2(m)+2)".to_string(),
            value: upper,
        }),
        verdict: if structural && sandwiched {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
    })
}

/// Random width-w DNFs: estimated criticality must make the
/// restrict-then-query bound dominate the exact average depth, and the
/// exact tail mass must be 1.
pub fn criticality_consistency_experiment(
    n: u32,
    width: u32,
    terms: usize,
    count: u64,
    seed: u64,
) -> Result<ExperimentReport> {
    if n > TAIL_LIMIT {
        return Err(Error::DpLimitExceeded { n, limit: TAIL_LIMIT });
    }
    let grid = default_p_grid();
    let rows: Vec<Result<(f64, f64, f64, bool)>> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = SplitMix64::stream(seed, i);
            let formula = DnfFormula::random(n, terms, width, &mut rng)?;
            let f = formula.to_table()?;
            let est = lambda_estimate(&f, &grid)?;
            let bound = restriction_cost_bound(n, est.lambda)?;
            let dave = dave_exact(&f)?.to_f64();
            let mass_one = {
                let tail = restriction_tail(&f, crate::rational::Frac::new(1, 2))?;
                use num_traits::One;
                tail.total_mass() == &num_rational::BigRational::one()
            };
            Ok((est.lambda, dave, bound, dave <= bound + 1e-9 && mass_one))
        })
        .collect();

    let mut violations = 0u64;
    let mut max_lambda = f64::MIN;
    let mut max_dave: f64 = 0.0;
    let mut max_bound: f64 = 0.0;
    for row in rows {
        let (lambda, dave, bound, ok) = row?;
        max_lambda = max_lambda.max(lambda);
        max_dave = max_dave.max(dave);
        max_bound = max_bound.max(bound);
        if !ok {
            violations += 1;
        }
    }

    Ok(ExperimentReport {
        schema: REPORT_SCHEMA_VERSION,
        experiment: "criticality".to_string(),
        params: json!({"n": n, "width": width, "terms": terms, "count": count}),
        seed,
        trials: count,
        statistics: json!({
            "violations": violations,
            "max_lambda": max_lambda,
            "max_dave": max_dave,
        }),
        bound: Some(BoundInfo {
            formula: "n*(1-1/lambda) + 2*sqrt(n/lambda)".to_string(),
            value: max_bound,
        }),
        verdict: if violations == 0 { Verdict::Pass } else { Verdict::Fail },
    })
}

/// Random DNFs evaluated gate by gate must cost at most 2*(size+1).
pub fn gate_cost_experiment(
    count: u64,
    max_n: u32,
    max_terms: usize,
    seed: u64,
) -> Result<ExperimentReport> {
    let rows: Vec<Result<bool>> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = SplitMix64::stream(seed, i);
            let n = 4 + (rng.below(u64::from(max_n - 3)) as u32);
            let size = 1 + rng.below(max_terms as u64) as usize;
            let width = 1 + rng.below(u64::from(n.min(4))) as u32;
            let formula = DnfFormula::random(n, size, width, &mut rng)?;
            Ok(sequential_gate_check(&formula)?.pass)
        })
        .collect();
    let mut violations = 0u64;
    for row in rows {
        if !row? {
            violations += 1;
        }
    }
    Ok(ExperimentReport {
        schema: REPORT_SCHEMA_VERSION,
        experiment: "prop41".to_string(),
        params: json!({"count": count, "max_n": max_n, "max_terms": max_terms}),
        seed,
        trials: count,
        statistics: json!({"violations": violations}),
        bound: Some(BoundInfo {
            formula: "2*(size+1)".to_string(),
            value: 2.0 * (max_terms as f64 + 1.0),
        }),
        verdict: if violations == 0 { Verdict::Pass } else { Verdict::Fail },
    })
}

/// Exact depth and average depth of the shoot-out family over a range of
/// round counts, checked against the closed forms 2r+1 and 4 - 3/2^r.
pub fn pso_table_experiment(rounds_from: u32, rounds_to: u32) -> Result<ExperimentReport> {
    if rounds_from > rounds_to {
        return Err(Error::domain("empty round range".to_string()));
    }
    let mut rows = Vec::new();
    let mut all_match = true;
    for r in rounds_from..=rounds_to {
        let f = pso(r)?;
        let n = f.n();
        let limit = n.max(crate::lattice::DEFAULT_DP_LIMIT);
        let depth = worst_depth_with_limit(&f, limit)?;
        let dave = dave_exact_with_limit(&f, limit)?;
        let expect_depth = 2 * r + 1;
        let expect_dave = Dyadic::new((4u128 << n) - (3u128 << (r + 1)), n);
        let ok = depth == expect_depth && dave == expect_dave;
        all_match &= ok;
        rows.push(json!({
            "rounds": r,
            "vars": n,
            "depth": depth,
            "depth_expected": expect_depth,
            "dave": dave.fraction_string(),
            "dave_decimal": dave.decimal_string(12),
            "dave_expected": expect_dave.fraction_string(),
            "match": ok,
        }));
    }
    Ok(ExperimentReport {
        schema: REPORT_SCHEMA_VERSION,
        experiment: "pso-table".to_string(),
        params: json!({"rounds_from": rounds_from, "rounds_to": rounds_to}),
        seed: 0,
        trials: u64::from(rounds_to - rounds_from + 1),
        statistics: json!({"rows": rows}),
        bound: Some(BoundInfo {
            formula: "depth = 2r+1, average = 4 - 3/2^r".to_string(),
            value: 4.0,
        }),
        verdict: if all_match { Verdict::Pass } else { Verdict::Fail },
    })
}
