//! Uniform random runs (linear extensions of the tree-poset).

use std::collections::BTreeMap;

use num_integer::Integer;
use rayon::prelude::*;
use serde_json::json;

use super::pst::PartialSumTree;
use super::rng::Rng;
use crate::process::{NodeId, RunPrefix, WeightedTree};

/// A complete run.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Run {
    actions: Vec<NodeId>,
}

impl Run {
    pub fn actions(&self) -> &[NodeId] {
        &self.actions
    }

    pub fn to_prefix(&self) -> RunPrefix {
        RunPrefix::new_unchecked(self.actions.clone())
    }

    pub fn display(&self, tree: &WeightedTree) -> String {
        self.to_prefix().display(tree.tree())
    }

    /// Exact per-step probabilities `|T(a_k)| / (n - k + 1)`, reduced.
    pub fn step_probabilities(&self, tree: &WeightedTree) -> Vec<(u64, u64)> {
        let n = tree.len() as u64;
        self.actions
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                let (num, den) = (tree.weight(a) as u64, n - i as u64);
                let g = num.gcd(&den);
                (num / g, den / g)
            })
            .collect()
    }

    pub fn to_json(&self, tree: &WeightedTree) -> serde_json::Value {
        let steps: Vec<_> = self
            .actions
            .iter()
            .zip(self.step_probabilities(tree))
            .map(|(&a, (num, den))| json!({ "action": tree.tree().action_name(a), "num": num, "den": den }))
            .collect();
        json!({ "run": self.display(tree), "steps": steps })
    }
}

/// State seen by a [`sample_run_traced`] observer after each sampling round.
pub struct RunStep<'a> {
    /// Round number, from 1.
    pub round: usize,
    pub action: NodeId,
    /// `M(action)` when it was drawn.
    pub weight: u64,
    /// `|M|` when it was drawn.
    pub total: u64,
    /// The multiset after the round.
    pub multiset: &'a PartialSumTree,
}

pub fn sample_run(tree: &WeightedTree, rng: &mut Rng) -> Run {
    sample_run_traced(tree, rng, |_| {})
}

/// Runs `n - 1` weighted sampling rounds over a partial sum tree holding all
/// nodes (initially only the root, at weight `n`); the one remaining action
/// is then appended.
pub fn sample_run_traced(tree: &WeightedTree, rng: &mut Rng, mut observe: impl FnMut(&RunStep<'_>)) -> Run {
    let n = tree.len();
    let t = tree.tree();
    let entries: Vec<(usize, u64)> =
        t.ids().map(|v| (v.0, if v == t.root() { n as u64 } else { 0 })).collect();
    let mut multiset = PartialSumTree::build(&entries).expect("preorder ids are distinct");
    let mut actions = Vec::with_capacity(n);
    for round in 1..n {
        let total = multiset.total();
        let id = multiset.sample(rng).expect("Invariant: |M| = n - round + 1 > 0");
        let action = NodeId(id);
        let weight = multiset.weight(id).expect("sampled ids are present");
        actions.push(action);
        multiset.update(id, 0).expect("present");
        for child in t.children(action) {
            multiset.update(child.0, tree.weight(child) as u64).expect("present");
        }
        observe(&RunStep { round, action, weight, total, multiset: &multiset });
    }
    if n > 0 {
        let last = if n == 1 { t.root().0 } else { multiset.support()[0] };
        actions.push(NodeId(last));
    }
    Run { actions }
}

/// Runs drawn in chunks of this size share one random stream.
pub const RUN_CHUNK: usize = 4096;

/// `count` runs; run `k` comes from stream `k / RUN_CHUNK` of `seed`, so the
/// output does not depend on the number of threads.
pub fn sample_runs(tree: &WeightedTree, seed: u64, count: usize) -> Vec<Run> {
    let chunks = count.div_ceil(RUN_CHUNK);
    (0..chunks)
        .into_par_iter()
        .flat_map_iter(|c| {
            let mut rng = Rng::new(seed, c as u64);
            let len = RUN_CHUNK.min(count - c * RUN_CHUNK);
            (0..len).map(move |_| sample_run(tree, &mut rng)).collect::<Vec<_>>()
        })
        .collect()
}

/// Occurrences of each distinct run, ordered by run.
pub fn run_frequencies(runs: &[Run]) -> BTreeMap<Run, u64> {
    let mut table = BTreeMap::new();
    for r in runs {
        *table.entry(r.clone()).or_insert(0) += 1;
    }
    table
}
