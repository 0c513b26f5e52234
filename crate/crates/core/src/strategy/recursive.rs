//! The general fixed-weight strategy: heavy subfunctions (wt >= #vars) use
//! ascending-order querying, light ones (wt <= 4 log2 #vars) use the
//! OR-of-blocks procedure, and everything in between queries
//! l = ceil(log2(r) + log2(log2(r)) + 3) variables with r = wt / log2(#vars)
//! and recurses on the subfunction.

use std::sync::Arc;

use super::naive::NaiveRun;
use super::partition::{PartitionPolicy, PartitionRun};
use super::{DecisionStrategy, Step, StrategyRun, Sub};
use crate::table::TruthTable;
use crate::Result;

pub struct RecursiveStrategy {
    f: TruthTable,
}

pub fn recursive_strategy(f: &TruthTable) -> Result<RecursiveStrategy> {
    Ok(RecursiveStrategy { f: f.clone() })
}

impl DecisionStrategy for RecursiveStrategy {
    fn name(&self) -> &'static str {
        "recursive"
    }

    fn begin(&self, _trial: u64) -> Box<dyn StrategyRun> {
        Box::new(RecursiveRun {
            mode: RecMode::Decide(Sub::full(&self.f)),
        })
    }
}

#[derive(Clone)]
enum RecMode {
    Decide(Sub),
    Naive(NaiveRun),
    Partition(PartitionRun),
    Probe { sub: Sub, left: u32 },
    Done(bool),
    /// Transitional placeholder while ownership moves between modes.
    Hollow,
}

#[derive(Clone)]
struct RecursiveRun {
    mode: RecMode,
}

/// Probe length for the middle branch.
fn probe_len(wt: u64, vars: u32) -> u32 {
    let ratio = wt as f64 / f64::from(vars).log2();
    let l = (ratio.log2() + ratio.log2().log2() + 3.0).ceil();
    (l as u32).clamp(1, vars)
}

impl RecursiveRun {
    fn decide(&mut self) {
        let RecMode::Decide(sub) = std::mem::replace(&mut self.mode, RecMode::Hollow) else {
            unreachable!("decide is only called in Decide mode");
        };
        if let Some(b) = sub.constant_value() {
            self.mode = RecMode::Done(b);
            return;
        }
        let wt = sub.weight();
        let vars = sub.free_count();
        if wt >= u64::from(vars) {
            self.mode = RecMode::Naive(NaiveRun::new(sub));
        } else if wt as f64 <= 4.0 * f64::from(vars).log2() + 1e-9 {
            self.mode = RecMode::Partition(PartitionRun::new(Arc::new(
                PartitionPolicy::from_sub(&sub),
            )));
        } else {
            let left = probe_len(wt, vars);
            self.mode = RecMode::Probe { sub, left };
        }
    }
}

impl StrategyRun for RecursiveRun {
    fn step(&mut self) -> Step {
        loop {
            match &mut self.mode {
                RecMode::Decide(_) => self.decide(),
                RecMode::Naive(run) => return run.step(),
                RecMode::Partition(run) => return run.step(),
                RecMode::Probe { sub, .. } => {
                    return Step::Query(sub.first_var().expect("non-constant"))
                }
                RecMode::Done(b) => return Step::Output(*b),
                RecMode::Hollow => unreachable!("hollow outside decide"),
            }
        }
    }

    fn feed(&mut self, var: u32, value: bool) {
        match &mut self.mode {
            RecMode::Naive(run) => run.feed(var, value),
            RecMode::Partition(run) => run.feed(var, value),
            RecMode::Probe { sub, left } => {
                sub.fix_orig(var, value);
                *left -= 1;
                if *left == 0 {
                    let RecMode::Probe { sub, .. } =
                        std::mem::replace(&mut self.mode, RecMode::Hollow)
                    else {
                        unreachable!();
                    };
                    self.mode = RecMode::Decide(sub);
                }
            }
            _ => panic!("feed without a pending query"),
        }
    }

    fn fork(&self) -> Box<dyn StrategyRun> {
        Box::new(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::sample_fixed_weight;
    use crate::strategy::{measure_cost, naive_strategy, MeasureMode, Step};

    /// Replay a strategy on one input, returning the query transcript.
    fn transcript(s: &dyn DecisionStrategy, x: u32) -> Vec<u32> {
        let mut run = s.begin(0);
        let mut out = Vec::new();
        loop {
            match run.step() {
                Step::Output(_) => return out,
                Step::Query(v) => {
                    out.push(v);
                    run.feed(v, x >> (v - 1) & 1 == 1);
                }
            }
        }
    }

    #[test]
    fn heavy_branch_equals_naive_decision_for_decision() {
        for seed in 0..10u64 {
            let f = sample_fixed_weight(10, 600 + seed, seed).unwrap();
            assert!(f.weight() >= 10);
            let rec = recursive_strategy(&f).unwrap();
            let naive = naive_strategy(&f);
            let a = measure_cost(&rec, &f, MeasureMode::Exact).unwrap();
            let b = measure_cost(&naive, &f, MeasureMode::Exact).unwrap();
            assert_eq!(
                a.estimate.exact().unwrap(),
                b.estimate.exact().unwrap()
            );
            for x in [0u32, 5, 77, 1023, 512] {
                assert_eq!(transcript(&rec, x), transcript(&naive, x), "x={x}");
            }
        }
    }

    #[test]
    fn probe_branch_engages_and_stays_zero_error() {
        // 4*log2(20) < 19 < 20 puts the start in the probe branch.
        let f = sample_fixed_weight(20, 19, 9).unwrap();
        let s = recursive_strategy(&f).unwrap();
        let report = measure_cost(&s, &f, MeasureMode::Exact).unwrap();
        assert!(report.max_cost <= 20);
        // First query must be x1 and the probe must run l variables deep.
        let t = transcript(&s, 0);
        let l = probe_len(19, 20);
        assert!(t.len() >= l as usize);
        assert_eq!(&t[..l as usize], &(1..=l).collect::<Vec<u32>>()[..]);
    }

    #[test]
    fn explicit_bound_holds_on_samples() {
        let bound = |n: u32, m: u64| {
            let r = m as f64 / f64::from(n).log2();
            r.log2() + r.log2().log2() + 87.0
        };
        let mut seed = 40u64;
        for m in [256u64, 2048, 1 << 15] {
            for _ in 0..15 {
                seed += 1;
                let f = sample_fixed_weight(16, m, seed * 101).unwrap();
                let s = recursive_strategy(&f).unwrap();
                let report = measure_cost(&s, &f, MeasureMode::Exact).unwrap();
                assert!(
                    report.estimate.mean() <= bound(16, m),
                    "m={m} cost={}",
                    report.estimate.mean()
                );
            }
        }
    }

    #[test]
    fn zero_function_outputs_immediately() {
        let f = TruthTable::zeros(6).unwrap();
        let s = recursive_strategy(&f).unwrap();
        let report = measure_cost(&s, &f, MeasureMode::Exact).unwrap();
        assert_eq!(report.max_cost, 0);
    }
}
