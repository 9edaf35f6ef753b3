//! Degree sequences read along the leftmost branch of the interleaving tree.
//!
//! Along the leftmost branch the actions are executed in prefix order, so
//! the degree at step `p` is the number of enabled actions once the first
//! `p` nodes (in prefix order) have run. It is therefore a running sum of
//! the prefix-order degree word and never needs the expanded tree.

use std::fmt;

use crate::error::{Error, Result};
use crate::process::tree::SyntaxTree;

/// `u_1 > 0`, `u_p >= u_{p-1} - 1`, and `u_n` is the only zero. The
/// single-node tree is the degenerate sequence `(0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DegreeSequence(Vec<usize>);

impl DegreeSequence {
    pub fn new(u: Vec<usize>) -> Result<Self> {
        let invalid = |index: usize, reason: &str| Error::InvalidDegreeSequence {
            index,
            reason: reason.to_string(),
        };
        match u.as_slice() {
            [] => return Err(invalid(0, "empty sequence")),
            [0] => return Ok(DegreeSequence(u)),
            [first, ..] if *first == 0 => return Err(invalid(1, "u_1 must be positive")),
            _ => {}
        }
        for p in 1..u.len() {
            if u[p] + 1 < u[p - 1] {
                return Err(invalid(p + 1, "u_p must be at least u_{p-1} - 1"));
            }
        }
        if let Some(p) = u[..u.len() - 1].iter().position(|&x| x == 0) {
            return Err(invalid(p + 1, "zero before the last term"));
        }
        if *u.last().unwrap() != 0 {
            return Err(invalid(u.len(), "last term must be zero"));
        }
        Ok(DegreeSequence(u))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Prefix-order node degrees: `v_1 = u_1`, `v_p = u_p - u_{p-1} + 1`.
    pub fn node_degrees(&self) -> Vec<usize> {
        let u = &self.0;
        let mut v = Vec::with_capacity(u.len());
        v.push(u[0]);
        for p in 1..u.len() {
            v.push(u[p] + 1 - u[p - 1]);
        }
        v
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn degree_sequence_of_tree(tree: &SyntaxTree) -> DegreeSequence {
    let mut enabled = 0usize;
    let u = tree
        .degrees()
        .into_iter()
        .enumerate()
        .map(|(p, d)| {
            // The executed node leaves the frontier (except the root, which
            // was never in it) and its children join.
            if p > 0 {
                enabled -= 1;
            }
            enabled += d;
            enabled
        })
        .collect();
    DegreeSequence(u)
}

pub fn tree_from_degree_sequence(u: &DegreeSequence) -> Result<SyntaxTree> {
    SyntaxTree::from_degrees(&u.node_degrees())
        .map_err(|e| Error::InvalidDegreeSequence { index: u.len(), reason: e.to_string() })
}
