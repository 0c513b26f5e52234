//! Sequential gate-by-gate evaluation strategies.

use std::sync::Arc;

use super::naive::NaiveRun;
use super::{DecisionStrategy, Step, StrategyRun, Sub};
use crate::dnf::{DnfFormula, DnfTerm};
use crate::error::Error;
use crate::restriction::Restriction;
use crate::table::TruthTable;
use crate::Result;

/// Evaluate a DNF term by term: query a term's unknown literals in
/// ascending variable order, skip the rest of a term once one literal
/// falsifies it, and stop with output 1 once a term is fully satisfied.
/// Answers are shared across terms, so the expected cost per gate stays
/// at most 2.
pub struct DnfSequentialStrategy {
    terms: Arc<Vec<DnfTerm>>,
}

pub fn dnf_sequential_strategy(formula: &DnfFormula) -> DnfSequentialStrategy {
    DnfSequentialStrategy {
        terms: Arc::new(formula.terms().to_vec()),
    }
}

impl DecisionStrategy for DnfSequentialStrategy {
    fn name(&self) -> &'static str {
        "dnf-sequential"
    }

    fn begin(&self, _trial: u64) -> Box<dyn StrategyRun> {
        Box::new(DnfSequentialRun {
            terms: Arc::clone(&self.terms),
            answers: Restriction::empty(),
        })
    }
}

#[derive(Clone)]
struct DnfSequentialRun {
    terms: Arc<Vec<DnfTerm>>,
    answers: Restriction,
}

impl StrategyRun for DnfSequentialRun {
    fn step(&mut self) -> Step {
        'terms: for term in self.terms.iter() {
            let lits = term.pos | term.neg;
            let mut unknown = None;
            let mut m = lits;
            while m != 0 {
                let var = m.trailing_zeros() + 1;
                m &= m - 1;
                let want = term.pos >> (var - 1) & 1 == 1;
                match self.answers.value(var) {
                    Some(v) if v != want => continue 'terms, // term falsified
                    Some(_) => {}
                    None => {
                        if unknown.is_none() {
                            unknown = Some(var);
                        }
                    }
                }
            }
            match unknown {
                Some(var) => return Step::Query(var),
                None => return Step::Output(true), // every literal satisfied
            }
        }
        Step::Output(false)
    }

    fn feed(&mut self, var: u32, value: bool) {
        self.answers = self.answers.with(var, value).expect("fresh variable");
    }

    fn fork(&self) -> Box<dyn StrategyRun> {
        Box::new(self.clone())
    }
}

/// OR of a w-variable function g over h disjoint blocks of an n-variable
/// input, each block evaluated by ascending-order querying of g. Used to
/// measure the hard wide-DNF instances.
pub struct BlockOrStrategy {
    g: Arc<TruthTable>,
    h: u32,
}

pub fn block_or_strategy(g: &TruthTable, h: u32, n: u32) -> Result<BlockOrStrategy> {
    if u64::from(h) * u64::from(g.n()) > u64::from(n) {
        return Err(Error::domain(format!(
            "{h} blocks of {} variables exceed n = {n}",
            g.n()
        )));
    }
    Ok(BlockOrStrategy {
        g: Arc::new(g.clone()),
        h,
    })
}

#[derive(Clone)]
struct BlockOrRun {
    g: Arc<TruthTable>,
    h: u32,
    current: u32,
    inner: Option<NaiveRun>,
}

impl BlockOrRun {
    fn start_block(&mut self) {
        let w = self.g.n();
        let base = self.current * w;
        let orig: Vec<u32> = (1..=w).map(|p| base + p).collect();
        self.inner = Some(NaiveRun::new(Sub::new((*self.g).clone(), orig)));
    }
}

impl DecisionStrategy for BlockOrStrategy {
    fn name(&self) -> &'static str {
        "block-or"
    }

    fn begin(&self, _trial: u64) -> Box<dyn StrategyRun> {
        Box::new(BlockOrRun {
            g: Arc::clone(&self.g),
            h: self.h,
            current: 0,
            inner: None,
        })
    }
}

impl StrategyRun for BlockOrRun {
    fn step(&mut self) -> Step {
        loop {
            if self.current == self.h {
                return Step::Output(false);
            }
            if self.inner.is_none() {
                self.start_block();
            }
            match self.inner.as_mut().unwrap().step() {
                Step::Output(true) => return Step::Output(true),
                Step::Output(false) => {
                    self.current += 1;
                    self.inner = None;
                }
                Step::Query(var) => return Step::Query(var),
            }
        }
    }

    fn feed(&mut self, var: u32, value: bool) {
        self.inner
            .as_mut()
            .expect("feed follows a query")
            .feed(var, value);
    }

    fn fork(&self) -> Box<dyn StrategyRun> {
        Box::new(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{disjoint_block_dnf, disjoint_block_bounds};
    use crate::rng::SplitMix64;
    use crate::strategy::{measure_cost, MeasureMode};

    #[test]
    fn single_term_costs_at_most_two() {
        let formula = DnfFormula::parse("x1 x2 x3 x4", 4, 1).unwrap();
        let f = formula.to_table().unwrap();
        let s = dnf_sequential_strategy(&formula);
        let report = measure_cost(&s, &f, MeasureMode::Exact).unwrap();
        assert!(report.estimate.mean() <= 2.0);
    }

    #[test]
    fn random_dnfs_stay_under_twice_gates() {
        let mut rng = SplitMix64::new(14);
        for _ in 0..50 {
            let n = 4 + rng.below(6) as u32;
            let size = 1 + rng.below(6) as usize;
            let width = 1 + rng.below(u64::from(n.min(4))) as u32;
            let formula = DnfFormula::random(n, size, width, &mut rng).unwrap();
            let f = formula.to_table().unwrap();
            let s = dnf_sequential_strategy(&formula);
            let report = measure_cost(&s, &f, MeasureMode::Exact).unwrap();
            let bound = 2.0 * (size as f64 + 1.0);
            assert!(
                report.estimate.mean() <= bound + 1e-9,
                "n={n} size={size} cost={}",
                report.estimate.mean()
            );
        }
    }

    #[test]
    fn block_or_is_zero_error_and_sandwiched() {
        let inst = disjoint_block_dnf(16, 8, 8, 123).unwrap();
        let f = inst.formula.to_table().unwrap();
        let s = block_or_strategy(&inst.g, inst.h, inst.n).unwrap();
        let report = measure_cost(&s, &f, MeasureMode::Exact).unwrap();
        let (lower, upper) = disjoint_block_bounds(&inst);
        let cost = report.estimate.mean();
        assert!(lower <= cost + 1e-9, "lower={lower} cost={cost}");
        assert!(cost <= upper + 1e-9, "upper={upper} cost={cost}");
    }
}
