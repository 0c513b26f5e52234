//! OR-of-blocks evaluation for light functions: split the on-set into 8
//! near-equal blocks, evaluate each block function in turn with the
//! correlated-coordinates procedure, and OR the answers. Under the weight
//! hypothesis each block costs at most 5 in expectation, so the whole
//! strategy stays at or below 40.

use std::sync::Arc;

use super::ecs_query::EcsRun;
use super::{DecisionStrategy, Step, StrategyRun, Sub};
use crate::error::Error;
use crate::restriction::Restriction;
use crate::table::TruthTable;
use crate::Result;

const BLOCKS: usize = 8;

pub struct PartitionStrategy {
    inner: Arc<PartitionPolicy>,
}

/// Shared immutable policy data: the block functions over the base
/// variable space plus the base positions' original identities.
pub(super) struct PartitionPolicy {
    blocks: Vec<TruthTable>,
    orig: Vec<u32>,
}

/// Split the on-set (ascending table index) into 8 contiguous blocks whose
/// sizes differ by at most one.
pub(super) fn split_blocks(table: &TruthTable) -> Vec<TruthTable> {
    let on = table.on_set();
    let m = on.len();
    let base = m / BLOCKS;
    let extra = m % BLOCKS;
    let mut blocks = Vec::with_capacity(BLOCKS);
    let mut at = 0usize;
    for i in 0..BLOCKS {
        let len = base + usize::from(i < extra);
        blocks.push(TruthTable::from_on_set(table.n(), &on[at..at + len]).expect("subset fits"));
        at += len;
    }
    blocks
}

/// Build the strategy. The classical hypothesis is wt(f) <= 4*log2(n); the
/// per-block cost argument only needs blocks of at most 8 points (ceil of
/// the weight over 8), so weights up to max(4*log2(n), 64) are accepted.
pub fn partition_strategy(f: &TruthTable) -> Result<PartitionStrategy> {
    let wt = f.weight();
    if wt < 1 {
        return Err(Error::Precondition {
            strategy: "partition",
            hypothesis: "wt(f) >= 1".to_string(),
        });
    }
    let cap = (4.0 * f64::from(f.n()).log2()).max(64.0);
    if wt as f64 > cap + 1e-9 {
        return Err(Error::Precondition {
            strategy: "partition",
            hypothesis: format!(
                "wt(f) <= max(4 log n, 64) (weight {wt}, cap {cap:.1})"
            ),
        });
    }
    Ok(PartitionStrategy {
        inner: Arc::new(PartitionPolicy {
            blocks: split_blocks(f),
            orig: (1..=f.n()).collect(),
        }),
    })
}

impl PartitionPolicy {
    pub(super) fn from_sub(sub: &Sub) -> PartitionPolicy {
        PartitionPolicy {
            blocks: split_blocks(sub.table()),
            orig: sub.orig_vars().to_vec(),
        }
    }
}

impl DecisionStrategy for PartitionStrategy {
    fn name(&self) -> &'static str {
        "partition"
    }

    fn begin(&self, _trial: u64) -> Box<dyn StrategyRun> {
        Box::new(PartitionRun::new(Arc::clone(&self.inner)))
    }
}

#[derive(Clone)]
pub(super) struct PartitionRun {
    policy: Arc<PartitionPolicy>,
    /// Answers so far, in base positions (1-based within the policy's
    /// variable space).
    answers: Restriction,
    current: usize,
    inner: Option<EcsRun>,
}

impl PartitionRun {
    pub(super) fn new(policy: Arc<PartitionPolicy>) -> PartitionRun {
        PartitionRun {
            policy,
            answers: Restriction::empty(),
            current: 0,
            inner: None,
        }
    }

    /// Start the block evaluator on block | answers-so-far.
    fn start_block(&mut self) {
        let block = &self.policy.blocks[self.current];
        let table = block.restrict(&self.answers).expect("answers are in range");
        let orig: Vec<u32> = (1..=block.n())
            .filter(|&p| !self.answers.is_fixed(p))
            .map(|p| self.policy.orig[(p - 1) as usize])
            .collect();
        self.inner = Some(EcsRun::new(Sub::new(table, orig)));
    }

    /// Base position of an original variable.
    fn base_pos(&self, var: u32) -> u32 {
        self.policy
            .orig
            .binary_search(&var)
            .expect("variable belongs to this policy") as u32
            + 1
    }
}

impl StrategyRun for PartitionRun {
    fn step(&mut self) -> Step {
        loop {
            if self.current == BLOCKS {
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
        let pos = self.base_pos(var);
        self.answers = self.answers.with(pos, value).expect("fresh variable");
        self.inner
            .as_mut()
            .expect("feed follows a query")
            .feed(var, value);
    }

    fn fork(&self) -> Box<dyn StrategyRun> {
        Box::new(self.clone())
    }
}
