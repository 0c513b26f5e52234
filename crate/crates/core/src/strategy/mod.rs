//! Executable adaptive query strategies with exact and Monte Carlo
//! expected-cost measurement.
//!
//! A strategy produces runs. A run alternates `step()` (which returns the
//! next variable to query or the final output) with `feed()` (which
//! records the answer). Runs are forkable, so exact measurement can walk
//! the full transcript tree of a strategy, sharing query prefixes, instead
//! of replaying every input from scratch; the two are equivalent because a
//! run's decisions depend only on the answers fed so far.

mod ecs_query;
mod naive;
mod partition;
mod recursive;
mod restriction;
mod sequential;

pub use ecs_query::{ecs_strategy, EcsStrategy};
pub use naive::{naive_strategy, NaiveStrategy};
pub use partition::{partition_strategy, PartitionStrategy};
pub use recursive::{recursive_strategy, RecursiveStrategy};
pub use restriction::{restriction_strategy, RestrictionStrategy};
pub use sequential::{block_or_strategy, dnf_sequential_strategy, BlockOrStrategy, DnfSequentialStrategy};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;
use crate::rational::Dyadic;
use crate::rng::SplitMix64;
use crate::table::TruthTable;
use crate::Result;

/// Exact measurement enumerates all 2^n inputs; bigger functions must use
/// Monte Carlo.
pub const EXACT_MEASURE_LIMIT: u32 = 20;

/// One decision of a strategy run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    /// Query this (1-based) variable next.
    Query(u32),
    /// Stop and output this value.
    Output(bool),
}

/// An in-progress strategy execution.
pub trait StrategyRun: Send {
    /// The current decision. Must be stable until the next `feed`.
    fn step(&mut self) -> Step;
    /// Record the answer to the variable most recently returned by `step`.
    fn feed(&mut self, var: u32, value: bool);
    /// Clone the run state (used to branch on both answers).
    fn fork(&self) -> Box<dyn StrategyRun>;
}

/// A query policy for one fixed function.
pub trait DecisionStrategy: Sync {
    fn name(&self) -> &'static str;
    /// Start a run. `trial` selects the internal randomness stream of
    /// seeded strategies; deterministic strategies ignore it.
    fn begin(&self, trial: u64) -> Box<dyn StrategyRun>;
}

/// A subfunction together with the original identities of its variables.
/// Runs carry one of these and shrink it as answers arrive.
#[derive(Debug, Clone)]
pub(crate) struct Sub {
    table: TruthTable,
    /// orig[p] = 1-based original variable at current position p.
    orig: Vec<u32>,
}

impl Sub {
    pub(crate) fn full(f: &TruthTable) -> Sub {
        Sub {
            table: f.clone(),
            orig: (1..=f.n()).collect(),
        }
    }

    pub(crate) fn new(table: TruthTable, orig: Vec<u32>) -> Sub {
        debug_assert_eq!(table.n() as usize, orig.len());
        Sub { table, orig }
    }

    pub(crate) fn table(&self) -> &TruthTable {
        &self.table
    }

    pub(crate) fn orig_vars(&self) -> &[u32] {
        &self.orig
    }

    pub(crate) fn free_count(&self) -> u32 {
        self.table.n()
    }

    pub(crate) fn weight(&self) -> u64 {
        self.table.weight()
    }

    pub(crate) fn constant_value(&self) -> Option<bool> {
        self.table.constant_value()
    }

    /// Original id of the variable at position `pos` (0-based).
    pub(crate) fn orig_at(&self, pos: u32) -> u32 {
        self.orig[pos as usize]
    }

    /// Lowest-numbered remaining original variable.
    pub(crate) fn first_var(&self) -> Option<u32> {
        self.orig.first().copied()
    }

    /// Fix an original variable (must be present) to a value.
    pub(crate) fn fix_orig(&mut self, var: u32, val: bool) {
        let pos = self
            .orig
            .binary_search(&var)
            .expect("fed a variable this run never queried");
        self.table = self.table.cofactor(pos as u32, val);
        self.orig.remove(pos);
    }
}

/// How to measure a strategy's cost.
#[derive(Debug, Clone, Copy)]
pub enum MeasureMode {
    /// Walk the full transcript tree; exact expected cost over all inputs.
    Exact,
    /// Sample inputs uniformly; trial i consumes stream `seed ^ i`.
    MonteCarlo { trials: u64, seed: u64 },
}

#[derive(Debug, Clone, Serialize)]
pub enum CostEstimate {
    Exact {
        /// Total queries summed over all 2^n inputs.
        total: u64,
        /// total / 2^n as an exact rational.
        #[serde(serialize_with = "serialize_dyadic")]
        expected: Dyadic,
    },
    MonteCarlo {
        mean: f64,
        trials: u64,
        seed: u64,
    },
}

fn serialize_dyadic<S: serde::Serializer>(d: &Dyadic, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&d.fraction_string())
}

impl CostEstimate {
    pub fn mean(&self) -> f64 {
        match self {
            CostEstimate::Exact { expected, .. } => expected.to_f64(),
            CostEstimate::MonteCarlo { mean, .. } => *mean,
        }
    }

    pub fn exact(&self) -> Option<Dyadic> {
        match self {
            CostEstimate::Exact { expected, .. } => Some(*expected),
            CostEstimate::MonteCarlo { .. } => None,
        }
    }
}

/// Measured cost of one strategy on one function.
#[derive(Debug, Clone, Serialize)]
pub struct CostReport {
    pub strategy: String,
    pub n: u32,
    pub estimate: CostEstimate,
    /// Largest query count observed on any evaluated input.
    pub max_cost: u32,
}

/// Measure a strategy, verifying zero error on every evaluated input
/// (an input where the output disagrees with f is a hard error carrying
/// the witness).
pub fn measure_cost(
    strategy: &dyn DecisionStrategy,
    f: &TruthTable,
    mode: MeasureMode,
) -> Result<CostReport> {
    match mode {
        MeasureMode::Exact => measure_exact(strategy, f),
        MeasureMode::MonteCarlo { trials, seed } => measure_monte_carlo(strategy, f, trials, seed),
    }
}

struct ExactAcc {
    total: u64,
    max: u32,
}

fn measure_exact(strategy: &dyn DecisionStrategy, f: &TruthTable) -> Result<CostReport> {
    let n = f.n();
    if n > EXACT_MEASURE_LIMIT {
        return Err(Error::MeasureLimitExceeded {
            n,
            limit: EXACT_MEASURE_LIMIT,
        });
    }
    let mut acc = ExactAcc { total: 0, max: 0 };
    let mut run = strategy.begin(0);
    walk(run.as_mut(), f, 0, 0, 0, &mut acc)?;
    Ok(CostReport {
        strategy: strategy.name().to_string(),
        n,
        estimate: CostEstimate::Exact {
            total: acc.total,
            expected: Dyadic::new(acc.total as u128, n),
        },
        max_cost: acc.max,
    })
}

fn walk(
    run: &mut dyn StrategyRun,
    f: &TruthTable,
    fixed: u32,
    vals: u32,
    depth: u32,
    acc: &mut ExactAcc,
) -> Result<()> {
    let n = f.n();
    match run.step() {
        Step::Output(b) => {
            // Zero-error check over every input consistent with the
            // transcript, straight off f.
            let free = !fixed & ((1u32 << n) - 1);
            let mut sub = free;
            loop {
                let idx = vals | sub;
                if f.get(idx) != b {
                    return Err(Error::StrategyMismatch {
                        input: idx as u64,
                        expected: u8::from(f.get(idx)),
                        got: u8::from(b),
                    });
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & free;
            }
            acc.total += u64::from(depth) << (n - depth);
            acc.max = acc.max.max(depth);
            Ok(())
        }
        Step::Query(var) => {
            if var == 0 || var > n {
                return Err(Error::VarOutOfRange { var, n });
            }
            let bit = 1u32 << (var - 1);
            if fixed & bit != 0 {
                return Err(Error::StrategyRequery { var });
            }
            if depth >= n {
                return Err(Error::StrategyOverrun { n });
            }
            let mut zero = run.fork();
            zero.feed(var, false);
            walk(zero.as_mut(), f, fixed | bit, vals, depth + 1, acc)?;
            run.feed(var, true);
            walk(run, f, fixed | bit, vals | bit, depth + 1, acc)
        }
    }
}

fn measure_monte_carlo(
    strategy: &dyn DecisionStrategy,
    f: &TruthTable,
    trials: u64,
    seed: u64,
) -> Result<CostReport> {
    if trials == 0 {
        return Err(Error::domain("need at least one trial".to_string()));
    }
    let n = f.n();
    let mask = (f.size() - 1) as u64;
    // Inputs draw from a phase-derived stream so they stay independent of
    // any strategy-internal stream seeded with the same user seed.
    let input_seed = crate::rng::phase_seed(seed, 0);
    let costs: Vec<Result<u32>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = SplitMix64::stream(input_seed, trial);
            let x = (rng.next_u64() & mask) as u32;
            let mut run = strategy.begin(trial);
            let mut answered = 0u32;
            let mut cost = 0u32;
            loop {
                match run.step() {
                    Step::Output(b) => {
                        if b != f.get(x) {
                            return Err(Error::StrategyMismatch {
                                input: x as u64,
                                expected: u8::from(f.get(x)),
                                got: u8::from(b),
                            });
                        }
                        return Ok(cost);
                    }
                    Step::Query(var) => {
                        if var == 0 || var > n {
                            return Err(Error::VarOutOfRange { var, n });
                        }
                        let bit = 1u32 << (var - 1);
                        if answered & bit != 0 {
                            return Err(Error::StrategyRequery { var });
                        }
                        if cost >= n {
                            return Err(Error::StrategyOverrun { n });
                        }
                        answered |= bit;
                        cost += 1;
                        run.feed(var, x & bit != 0);
                    }
                }
            }
        })
        .collect();

    let mut total: u64 = 0;
    let mut max = 0u32;
    for c in costs {
        let c = c?;
        total += u64::from(c);
        max = max.max(c);
    }
    Ok(CostReport {
        strategy: strategy.name().to_string(),
        n,
        estimate: CostEstimate::MonteCarlo {
            mean: total as f64 / trials as f64,
            trials,
            seed,
        },
        max_cost: max,
    })
}
