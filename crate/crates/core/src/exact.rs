//! Exact optimal quantities over the restriction lattice.
//!
//! All four quantities come from the same recursion shape: a state whose
//! subfunction is constant is a leaf; otherwise the value is a min over
//! the free variables of a combination of the two child states. Costs are
//! integer totals over all inputs (not fractional expectations), so every
//! result is exact.

use crate::error::Error;
use crate::lattice::{scan_states, RestrictionLattice, DEFAULT_DP_LIMIT};
use crate::rational::Dyadic;
use crate::table::TruthTable;
use crate::Result;

/// A materialized decision tree. Along any root-to-leaf path no variable
/// repeats; variables are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecisionTree {
    Leaf(bool),
    Query {
        var: u32,
        zero: Box<DecisionTree>,
        one: Box<DecisionTree>,
    },
}

impl DecisionTree {
    pub fn evaluate(&self, idx: u32) -> bool {
        match self {
            DecisionTree::Leaf(b) => *b,
            DecisionTree::Query { var, zero, one } => {
                if TruthTable::var_bit(idx, *var) {
                    one.evaluate(idx)
                } else {
                    zero.evaluate(idx)
                }
            }
        }
    }

    /// Number of queries made on input `idx`.
    pub fn cost(&self, idx: u32) -> u32 {
        match self {
            DecisionTree::Leaf(_) => 0,
            DecisionTree::Query { var, zero, one } => {
                1 + if TruthTable::var_bit(idx, *var) {
                    one.cost(idx)
                } else {
                    zero.cost(idx)
                }
            }
        }
    }

    pub fn depth(&self) -> u32 {
        match self {
            DecisionTree::Leaf(_) => 0,
            DecisionTree::Query { zero, one, .. } => 1 + zero.depth().max(one.depth()),
        }
    }

    pub fn leaves(&self) -> u64 {
        match self {
            DecisionTree::Leaf(_) => 1,
            DecisionTree::Query { zero, one, .. } => zero.leaves() + one.leaves(),
        }
    }

    /// Does the tree compute `f` on every input?
    pub fn computes(&self, f: &TruthTable) -> bool {
        (0..f.size() as u32).all(|idx| self.evaluate(idx) == f.get(idx))
    }

    /// Exact expected cost under uniform inputs on n variables.
    pub fn expected_cost(&self, n: u32) -> Dyadic {
        fn total(t: &DecisionTree, n: u32, depth: u32) -> u128 {
            match t {
                DecisionTree::Leaf(_) => 0,
                DecisionTree::Query { zero, one, .. } => {
                    (1u128 << (n - depth)) + total(zero, n, depth + 1) + total(one, n, depth + 1)
                }
            }
        }
        Dyadic::new(total(self, n, 0), n)
    }
}

/// Total-cost DP array: value[state] = min over zero-error trees for the
/// subfunction of the summed cost over its inputs.
fn total_cost_table(lat: &RestrictionLattice) -> Vec<u32> {
    let n = lat.n();
    let mut cost = vec![0u32; lat.num_states()];
    scan_states(n, |state, free_mask, _| {
        let fc = free_mask.count_ones();
        if lat.is_constant(state, fc) {
            return; // cost stays 0
        }
        let inputs = 1u32 << fc;
        let mut best = u32::MAX;
        let mut m = free_mask;
        while m != 0 {
            let i = m.trailing_zeros();
            m &= m - 1;
            let c = inputs + cost[lat.fix(state, i, false)] + cost[lat.fix(state, i, true)];
            if c < best {
                best = c;
            }
        }
        cost[state] = best;
    });
    cost
}

/// Exact average-case deterministic query complexity, as total cost / 2^n.
pub fn dave_exact(f: &TruthTable) -> Result<Dyadic> {
    dave_exact_with_limit(f, DEFAULT_DP_LIMIT)
}

pub fn dave_exact_with_limit(f: &TruthTable, limit: u32) -> Result<Dyadic> {
    let lat = RestrictionLattice::build_with_limit(f, limit)?;
    let cost = total_cost_table(&lat);
    Ok(Dyadic::new(cost[lat.root()] as u128, f.n()))
}

/// Exact worst-case deterministic query complexity (minimum tree depth).
pub fn worst_depth(f: &TruthTable) -> Result<u32> {
    worst_depth_with_limit(f, DEFAULT_DP_LIMIT)
}

pub fn worst_depth_with_limit(f: &TruthTable, limit: u32) -> Result<u32> {
    let lat = RestrictionLattice::build_with_limit(f, limit)?;
    let d = depth_table(&lat);
    Ok(d[lat.root()] as u32)
}

/// Worst-case optimal depth of every restriction state; shared with the
/// criticality tails and the random-restriction strategy.
pub fn depth_table(lat: &RestrictionLattice) -> Vec<u8> {
    let n = lat.n();
    let mut depth = vec![0u8; lat.num_states()];
    scan_states(n, |state, free_mask, _| {
        let fc = free_mask.count_ones();
        if lat.is_constant(state, fc) {
            return;
        }
        let mut best = u8::MAX;
        let mut m = free_mask;
        while m != 0 {
            let i = m.trailing_zeros();
            m &= m - 1;
            let d = 1 + depth[lat.fix(state, i, false)].max(depth[lat.fix(state, i, true)]);
            if d < best {
                best = d;
            }
        }
        depth[state] = best;
    });
    depth
}

/// Minimum number of leaves over all decision trees computing f.
pub fn dtsize_min(f: &TruthTable) -> Result<u64> {
    dtsize_min_with_limit(f, DEFAULT_DP_LIMIT)
}

pub fn dtsize_min_with_limit(f: &TruthTable, limit: u32) -> Result<u64> {
    let lat = RestrictionLattice::build_with_limit(f, limit)?;
    let n = lat.n();
    let mut leaves = vec![0u32; lat.num_states()];
    scan_states(n, |state, free_mask, _| {
        let fc = free_mask.count_ones();
        if lat.is_constant(state, fc) {
            leaves[state] = 1;
            return;
        }
        let mut best = u32::MAX;
        let mut m = free_mask;
        while m != 0 {
            let i = m.trailing_zeros();
            m &= m - 1;
            let c = leaves[lat.fix(state, i, false)] + leaves[lat.fix(state, i, true)];
            if c < best {
                best = c;
            }
        }
        leaves[state] = best;
    });
    Ok(leaves[lat.root()] as u64)
}

/// A decision tree attaining `dave_exact(f)`, with ties broken toward the
/// lowest variable index at every node.
pub fn optimal_tree(f: &TruthTable) -> Result<DecisionTree> {
    optimal_tree_with_limit(f, DEFAULT_DP_LIMIT)
}

pub fn optimal_tree_with_limit(f: &TruthTable, limit: u32) -> Result<DecisionTree> {
    let lat = RestrictionLattice::build_with_limit(f, limit)?;
    let cost = total_cost_table(&lat);

    fn extract(
        lat: &RestrictionLattice,
        cost: &[u32],
        state: usize,
        free_mask: u32,
    ) -> DecisionTree {
        let fc = free_mask.count_ones();
        if lat.is_constant(state, fc) {
            return DecisionTree::Leaf(lat.weight(state) > 0);
        }
        let inputs = 1u32 << fc;
        let mut best_var = 0;
        let mut best = u32::MAX;
        let mut m = free_mask;
        while m != 0 {
            let i = m.trailing_zeros();
            m &= m - 1;
            let c = inputs + cost[lat.fix(state, i, false)] + cost[lat.fix(state, i, true)];
            if c < best {
                best = c;
                best_var = i;
            }
        }
        let zero = extract(lat, cost, lat.fix(state, best_var, false), free_mask & !(1 << best_var));
        let one = extract(lat, cost, lat.fix(state, best_var, true), free_mask & !(1 << best_var));
        DecisionTree::Query {
            var: best_var + 1,
            zero: Box::new(zero),
            one: Box::new(one),
        }
    }

    let root_mask = (1u32 << f.n()) - 1;
    Ok(extract(&lat, &cost, lat.root(), root_mask))
}

// ---- tiny-n brute-force oracle -------------------------------------------

const BRUTE_FORCE_LIMIT: u32 = 3;

/// Exhaustive minimum over all reasonable decision trees (trees that stop
/// exactly when the subfunction is constant), for n <= 3. Independent of
/// the lattice DP; used as its oracle.
pub fn brute_force_dave(f: &TruthTable) -> Result<Dyadic> {
    if f.n() > BRUTE_FORCE_LIMIT {
        return Err(Error::domain(format!(
            "brute force supports n <= {BRUTE_FORCE_LIMIT}, got {}",
            f.n()
        )));
    }
    let table: Vec<bool> = (0..f.size() as u32).map(|i| f.get(i)).collect();
    let vars: Vec<u32> = (1..=f.n()).collect();
    let trees = enumerate_reasonable_trees(&table, &vars);
    let n = f.n();
    let best = trees
        .iter()
        .map(|t| (0..1u32 << n).map(|x| t.cost(x) as u128).sum::<u128>())
        .min()
        .expect("at least one reasonable tree exists");
    Ok(Dyadic::new(best, n))
}

/// All reasonable trees for the subfunction `table` over the original
/// variables `vars` (ascending). `table.len() == 2^vars.len()`.
fn enumerate_reasonable_trees(table: &[bool], vars: &[u32]) -> Vec<DecisionTree> {
    if table.iter().all(|&b| !b) {
        return vec![DecisionTree::Leaf(false)];
    }
    if table.iter().all(|&b| b) {
        return vec![DecisionTree::Leaf(true)];
    }
    let mut out = Vec::new();
    for (pos, &var) in vars.iter().enumerate() {
        let mut sub0 = Vec::with_capacity(table.len() / 2);
        let mut sub1 = Vec::with_capacity(table.len() / 2);
        for (idx, &b) in table.iter().enumerate() {
            if idx >> pos & 1 == 0 {
                sub0.push(b);
            } else {
                sub1.push(b);
            }
        }
        let rest: Vec<u32> = vars
            .iter()
            .copied()
            .filter(|&v| v != var)
            .collect();
        for t0 in enumerate_reasonable_trees(&sub0, &rest) {
            for t1 in enumerate_reasonable_trees(&sub1, &rest) {
                out.push(DecisionTree::Query {
                    var,
                    zero: Box::new(t0.clone()),
                    one: Box::new(t1),
                });
            }
        }
    }
    out
}
