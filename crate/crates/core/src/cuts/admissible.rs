//! Admissible cuts: root-sharing subtrees obtained by repeatedly removing
//! leaves.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::One;

use crate::counts::hook_count;
use crate::error::{Error, Result};
use crate::process::{annotate_weights, NodeId, SyntaxTree};

pub const DEFAULT_CUT_LIMIT: usize = 18;
const MAX_CUT_LIMIT: usize = 63;

/// One admissible cut of a source tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleCut {
    /// Source nodes kept, in prefix order.
    pub nodes: Vec<NodeId>,
    pub shape: SyntaxTree,
    /// Increasing labellings of the shape.
    pub labellings: BigUint,
}

impl AdmissibleCut {
    pub fn size(&self) -> usize {
        self.nodes.len()
    }
}

/// Number of admissible cuts: `c(v) = prod_children (1 + c(child))`.
pub fn cut_count(tree: &SyntaxTree) -> BigUint {
    let mut counts = vec![BigUint::one(); tree.len()];
    for v in (0..tree.len()).rev() {
        let mut c = BigUint::one();
        for child in tree.child_indices(v) {
            c *= &counts[*child] + 1u32;
        }
        counts[v] = c;
    }
    counts.swap_remove(0)
}

pub fn enumerate_admissible_cuts(tree: &SyntaxTree) -> Result<Vec<AdmissibleCut>> {
    enumerate_admissible_cuts_with_limit(tree, DEFAULT_CUT_LIMIT)
}

/// All cuts, each once, sorted by size (largest first), then by the
/// parenthesis form of the shape, then by the kept prefix ids.
pub fn enumerate_admissible_cuts_with_limit(tree: &SyntaxTree, limit: usize) -> Result<Vec<AdmissibleCut>> {
    let limit = limit.min(MAX_CUT_LIMIT);
    if tree.len() > limit {
        return Err(Error::OracleLimit { n: tree.len(), limit });
    }
    let masks = cut_masks(tree, 0);
    let mut cuts: Vec<(String, AdmissibleCut)> = masks
        .into_iter()
        .map(|mask| {
            let cut = cut_from_mask(tree, mask);
            (cut.shape.structure(), cut)
        })
        .collect();
    cuts.sort_by(|(sa, a), (sb, b)| {
        b.size()
            .cmp(&a.size())
            .then_with(|| sa.cmp(sb))
            .then_with(|| a.nodes.cmp(&b.nodes))
    });
    Ok(cuts.into_iter().map(|(_, c)| c).collect())
}

fn cut_masks(tree: &SyntaxTree, v: usize) -> Vec<u64> {
    let mut acc = vec![1u64 << v];
    for &child in tree.child_indices(v) {
        let sub = cut_masks(tree, child);
        let mut next = Vec::with_capacity(acc.len() * (sub.len() + 1));
        for &m in &acc {
            next.push(m);
            next.extend(sub.iter().map(|&s| m | s));
        }
        acc = next;
    }
    acc
}

fn cut_from_mask(tree: &SyntaxTree, mask: u64) -> AdmissibleCut {
    let kept: Vec<usize> = (0..tree.len()).filter(|&v| mask >> v & 1 == 1).collect();
    let mut position = vec![usize::MAX; tree.len()];
    for (k, &v) in kept.iter().enumerate() {
        position[v] = k;
    }
    let labels = kept.iter().map(|&v| tree.labels()[v].clone()).collect();
    let parents = kept.iter().map(|&v| tree.parent_index(v).map(|p| position[p])).collect();
    let shape = SyntaxTree::from_preorder(labels, parents).expect("cuts are prefix closed");
    let labellings = hook_count(&annotate_weights(shape.clone()));
    AdmissibleCut { nodes: kept.into_iter().map(NodeId::from_index).collect(), shape, labellings }
}

/// Orders two cuts as [`enumerate_admissible_cuts`] does.
pub fn compare_cuts(a: &AdmissibleCut, b: &AdmissibleCut) -> Ordering {
    b.size()
        .cmp(&a.size())
        .then_with(|| a.shape.structure().cmp(&b.shape.structure()))
        .then_with(|| a.nodes.cmp(&b.nodes))
}

/// Cut counts of size `1..=n` for `tree`, without materializing shapes.
pub fn cut_size_counts(tree: &SyntaxTree) -> Vec<BigUint> {
    // Generating polynomial of cut sizes: g(v) = x * prod (1 + g(child)).
    let n = tree.len();
    let mut polys: Vec<Vec<BigUint>> = vec![Vec::new(); n];
    for v in (0..n).rev() {
        let mut p = vec![BigUint::from(0u32), BigUint::one()];
        for &c in tree.child_indices(v) {
            let child = std::mem::take(&mut polys[c]);
            let mut q = p.clone();
            q.resize(p.len() + child.len() - 1, BigUint::from(0u32));
            for (i, a) in p.iter().enumerate() {
                for (j, b) in child.iter().enumerate() {
                    if j > 0 {
                        q[i + j] += a * b;
                    }
                }
            }
            p = q;
        }
        polys[v] = p;
    }
    let mut root = std::mem::take(&mut polys[0]);
    root.remove(0);
    root
}
