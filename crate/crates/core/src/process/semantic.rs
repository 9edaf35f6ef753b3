//! Child contraction and explicit expansion of the interleaving tree.
//!
//! The expansion is exponential in the size of the syntax tree and serves as
//! the verification oracle for the counting and sampling code.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::cuts::semantic_size;
use crate::error::{Error, Result};
use crate::process::tree::{escape_dot, NodeId, SyntaxTree};

/// Default node budget for [`build_semantic_tree`].
pub const DEFAULT_SEMANTIC_BUDGET: u64 = 1_000_000;

/// `i`-contraction (1-based `i`): the `i`-th child of the root becomes the
/// root, and the root's other subtrees are spliced around its children.
pub fn contract(tree: &SyntaxTree, i: usize) -> Result<SyntaxTree> {
    contract_tracked(tree, i).map(|(t, _)| t)
}

/// Contraction that also returns, for each node of the result, the index of
/// the node of `tree` it came from.
pub(crate) fn contract_tracked(tree: &SyntaxTree, i: usize) -> Result<(SyntaxTree, Vec<usize>)> {
    let root_children = tree.child_indices(0);
    if root_children.is_empty() {
        return Err(Error::LeafContraction);
    }
    if i == 0 || i > root_children.len() {
        return Err(Error::ChildIndex { index: i, degree: root_children.len() });
    }
    let chosen = root_children[i - 1];
    let sizes = tree.sizes();

    // New children of the new root, left to right: subtree roots.
    let mut tops: Vec<usize> = Vec::new();
    tops.extend_from_slice(&root_children[..i - 1]);
    tops.extend_from_slice(tree.child_indices(chosen));
    tops.extend_from_slice(&root_children[i..]);

    let mut origin = Vec::with_capacity(tree.len() - 1);
    let mut position = vec![usize::MAX; tree.len()];
    origin.push(chosen);
    position[chosen] = 0;
    for &top in &tops {
        // Subtrees are contiguous preorder ranges.
        for v in top..top + sizes[top] {
            position[v] = origin.len();
            origin.push(v);
        }
    }
    let labels = origin.iter().map(|&v| tree.labels()[v].clone()).collect();
    let parents = origin
        .iter()
        .enumerate()
        .map(|(k, &v)| {
            if k == 0 {
                None
            } else {
                match tree.parent_index(v) {
                    Some(0) => Some(0),
                    Some(p) => Some(position[p]),
                    None => unreachable!("old root is dropped"),
                }
            }
        })
        .collect();
    Ok((SyntaxTree::from_preorder(labels, parents)?, origin))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemanticNode {
    pub label: String,
    /// Node of the source syntax tree executed at this step.
    pub action: NodeId,
    pub level: usize,
    pub children: Vec<usize>,
}

/// Explicit interleaving tree. Node 0 is the root; nodes are stored in
/// prefix order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemanticTree {
    nodes: Vec<SemanticNode>,
    source_size: usize,
}

impl SemanticTree {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[SemanticNode] {
        &self.nodes
    }

    pub fn source_size(&self) -> usize {
        self.source_size
    }

    /// Node count per level, level 0 being the root.
    pub fn level_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.source_size];
        for node in &self.nodes {
            counts[node.level] += 1;
        }
        counts
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.children.is_empty()).count()
    }

    pub fn is_balanced(&self) -> bool {
        self.nodes
            .iter()
            .filter(|n| n.children.is_empty())
            .all(|n| n.level + 1 == self.source_size)
    }

    /// Root-to-leaf action sequences, left to right.
    pub fn branches(&self) -> Vec<Vec<NodeId>> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.collect_branches(0, &mut path, &mut out);
        out
    }

    fn collect_branches(&self, v: usize, path: &mut Vec<NodeId>, out: &mut Vec<Vec<NodeId>>) {
        path.push(self.nodes[v].action);
        if self.nodes[v].children.is_empty() {
            out.push(path.clone());
        } else {
            for &c in &self.nodes[v].children {
                self.collect_branches(c, path, out);
            }
        }
        path.pop();
    }

    /// Degrees along the leftmost branch.
    pub fn leftmost_degrees(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut v = 0;
        loop {
            let node = &self.nodes[v];
            out.push(node.children.len());
            match node.children.first() {
                Some(&c) => v = c,
                None => return out,
            }
        }
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph semantic {\n");
        for (k, node) in self.nodes.iter().enumerate() {
            let _ = writeln!(
                out,
                "  s{} [label=\"{}\", action={}, level={}];",
                k,
                escape_dot(&node.label),
                node.action,
                node.level
            );
        }
        for (k, node) in self.nodes.iter().enumerate() {
            for &c in &node.children {
                let _ = writeln!(out, "  s{} -> s{};", k, c);
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Expands `tree` into its interleaving tree by repeated contraction.
///
/// The exact node count is predicted first from the level profile; the
/// expansion is refused when it exceeds `budget`.
pub fn build_semantic_tree(tree: &SyntaxTree, budget: u64) -> Result<SemanticTree> {
    let predicted: BigUint = semantic_size(tree)?;
    if predicted.to_u64().is_none_or(|s| s > budget) {
        return Err(Error::BudgetExceeded { predicted, budget });
    }
    let mut nodes = Vec::new();
    let origin: Vec<usize> = (0..tree.len()).collect();
    expand(tree, &origin, 0, &mut nodes)?;
    Ok(SemanticTree { nodes, source_size: tree.len() })
}

fn expand(
    tree: &SyntaxTree,
    origin: &[usize],
    level: usize,
    nodes: &mut Vec<SemanticNode>,
) -> Result<usize> {
    let me = nodes.len();
    nodes.push(SemanticNode {
        label: tree.labels()[0].clone(),
        action: NodeId::from_index(origin[0]),
        level,
        children: Vec::new(),
    });
    let degree = tree.degree(tree.root());
    for i in 1..=degree {
        let (sub, sub_origin) = contract_tracked(tree, i)?;
        let sub_origin: Vec<usize> = sub_origin.iter().map(|&v| origin[v]).collect();
        let child = expand(&sub, &sub_origin, level + 1, nodes)?;
        nodes[me].children.push(child);
    }
    Ok(me)
}
