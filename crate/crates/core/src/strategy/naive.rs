//! The reasonable baseline: query free variables in ascending index order,
//! stopping exactly when the subfunction becomes constant. Its expected
//! cost is at most log2(wt(f)) + 2 for any nonzero f.

use super::{DecisionStrategy, Step, StrategyRun, Sub};
use crate::table::TruthTable;

pub struct NaiveStrategy {
    f: TruthTable,
}

pub fn naive_strategy(f: &TruthTable) -> NaiveStrategy {
    NaiveStrategy { f: f.clone() }
}

impl DecisionStrategy for NaiveStrategy {
    fn name(&self) -> &'static str {
        "naive"
    }

    fn begin(&self, _trial: u64) -> Box<dyn StrategyRun> {
        Box::new(NaiveRun {
            sub: Sub::full(&self.f),
        })
    }
}

#[derive(Clone)]
pub(super) struct NaiveRun {
    sub: Sub,
}

impl NaiveRun {
    pub(super) fn new(sub: Sub) -> NaiveRun {
        NaiveRun { sub }
    }
}

impl StrategyRun for NaiveRun {
    fn step(&mut self) -> Step {
        match self.sub.constant_value() {
            Some(b) => Step::Output(b),
            None => Step::Query(self.sub.first_var().expect("non-constant has variables")),
        }
    }

    fn feed(&mut self, var: u32, value: bool) {
        self.sub.fix_orig(var, value);
    }

    fn fork(&self) -> Box<dyn StrategyRun> {
        Box::new(self.clone())
    }
}
