//! The random-restriction strategy: query each variable independently
//! with probability 1-p (the answers realize a p-random restriction rho
//! with values from the input), then run a worst-case optimal tree on
//! f|rho, padding to exactly D(f|rho) queries. The cost of a run is
//! therefore |supp(rho)| + D(f|rho) on every input, so the measured mean
//! decomposes as n(1-p) + E[D(f|rho)].

use std::sync::Arc;

use super::{DecisionStrategy, Step, StrategyRun};
use crate::error::Error;
use crate::exact::depth_table;
use crate::lattice::{RestrictionLattice, DEFAULT_DP_LIMIT};
use crate::rational::Frac;
use crate::rng::SplitMix64;
use crate::table::TruthTable;
use crate::Result;

pub struct RestrictionStrategy {
    n: u32,
    p: Frac,
    seed: u64,
    lat: Arc<RestrictionLattice>,
    depth: Arc<Vec<u8>>,
}

pub fn restriction_strategy(f: &TruthTable, p: Frac, seed: u64) -> Result<RestrictionStrategy> {
    if p > Frac::from_integer(1) {
        return Err(Error::domain(format!("p = {p} outside [0, 1]")));
    }
    if f.n() > DEFAULT_DP_LIMIT {
        return Err(Error::DpLimitExceeded {
            n: f.n(),
            limit: DEFAULT_DP_LIMIT,
        });
    }
    let lat = Arc::new(RestrictionLattice::build(f)?);
    let depth = Arc::new(depth_table(&lat));
    Ok(RestrictionStrategy {
        n: f.n(),
        p,
        seed,
        lat,
        depth,
    })
}

impl RestrictionStrategy {
    /// Sample one restriction support for the given trial stream: each
    /// variable stays free with probability p (integer-exact Bernoulli).
    fn sample_queries(&self, trial: u64) -> Vec<u32> {
        let mut rng = SplitMix64::stream(self.seed, trial);
        let num = *self.p.numer();
        let den = *self.p.denom();
        (1..=self.n)
            .filter(|_| {
                let free = rng.below(den) < num;
                !free
            })
            .collect()
    }

    /// Support size and worst-case depth of the restriction a trial
    /// realizes; the run's cost on any input is their sum.
    pub fn trial_cost_parts(&self, trial: u64, input: u32) -> (u32, u32) {
        let queries = self.sample_queries(trial);
        let mut state = self.lat.root();
        for &var in &queries {
            state = self.lat.fix(state, var - 1, input >> (var - 1) & 1 == 1);
        }
        (queries.len() as u32, u32::from(self.depth[state]))
    }
}

impl DecisionStrategy for RestrictionStrategy {
    fn name(&self) -> &'static str {
        "restriction"
    }

    fn begin(&self, trial: u64) -> Box<dyn StrategyRun> {
        Box::new(RestrictionRun {
            lat: Arc::clone(&self.lat),
            depth: Arc::clone(&self.depth),
            state: self.lat.root(),
            free_mask: (1u32 << self.n) - 1,
            to_query: self.sample_queries(trial),
            at: 0,
            phase2: None,
        })
    }
}

#[derive(Clone)]
struct RestrictionRun {
    lat: Arc<RestrictionLattice>,
    depth: Arc<Vec<u8>>,
    state: usize,
    free_mask: u32,
    to_query: Vec<u32>,
    at: usize,
    /// (target queries, made queries) for the optimal-tree phase.
    phase2: Option<(u32, u32)>,
}

impl RestrictionRun {
    /// Variable minimizing 1 + max(D(child0), D(child1)), lowest index on
    /// ties; one step of a worst-case optimal tree.
    fn best_split(&self) -> u32 {
        let mut best_var = 0;
        let mut best = u32::MAX;
        let mut m = self.free_mask;
        while m != 0 {
            let i = m.trailing_zeros();
            m &= m - 1;
            let d0 = self.depth[self.lat.fix(self.state, i, false)];
            let d1 = self.depth[self.lat.fix(self.state, i, true)];
            let d = 1 + u32::from(d0.max(d1));
            if d < best {
                best = d;
                best_var = i + 1;
            }
        }
        best_var
    }
}

impl StrategyRun for RestrictionRun {
    fn step(&mut self) -> Step {
        if self.at < self.to_query.len() {
            return Step::Query(self.to_query[self.at]);
        }
        let (target, made) = *self
            .phase2
            .get_or_insert_with(|| (u32::from(self.depth[self.state]), 0));
        let fc = self.free_mask.count_ones();
        if !self.lat.is_constant(self.state, fc) {
            return Step::Query(self.best_split());
        }
        if made < target {
            // Pad with the lowest free variable so every input of this
            // restriction costs exactly |supp| + D(f|rho).
            return Step::Query(self.free_mask.trailing_zeros() + 1);
        }
        Step::Output(self.lat.weight(self.state) > 0)
    }

    fn feed(&mut self, var: u32, value: bool) {
        self.state = self.lat.fix(self.state, var - 1, value);
        self.free_mask &= !(1 << (var - 1));
        if self.at < self.to_query.len() {
            self.at += 1;
        } else {
            let (_, made) = self.phase2.as_mut().expect("phase2 started");
            *made += 1;
        }
    }

    fn fork(&self) -> Box<dyn StrategyRun> {
        Box::new(self.clone())
    }
}
