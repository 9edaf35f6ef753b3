//! Partial sum tree: a weighted multiset with logarithmic sampling and
//! update.
//!
//! Entries live in a complete binary tree in heap layout over insertion
//! order (slot `k` has children `2k + 1` and `2k + 2`). Each slot caches the
//! total weight of its left and right subtrees.

use std::collections::HashMap;

use super::rng::Rng;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialSumTree {
    ids: Vec<usize>,
    weights: Vec<u64>,
    left: Vec<u64>,
    right: Vec<u64>,
    slots: HashMap<usize, usize>,
}

/// The three fields of one slot: `left | id^weight | right`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PstNode {
    pub left: u64,
    pub id: usize,
    pub weight: u64,
    pub right: u64,
}

impl PartialSumTree {
    pub fn build(entries: &[(usize, u64)]) -> Result<Self> {
        let n = entries.len();
        let mut slots = HashMap::with_capacity(n);
        for (k, &(id, _)) in entries.iter().enumerate() {
            if slots.insert(id, k).is_some() {
                return Err(Error::DuplicateId(id));
            }
        }
        let mut pst = PartialSumTree {
            ids: entries.iter().map(|e| e.0).collect(),
            weights: entries.iter().map(|e| e.1).collect(),
            left: vec![0; n],
            right: vec![0; n],
            slots,
        };
        for k in (0..n).rev() {
            pst.left[k] = pst.subtree_total(2 * k + 1);
            pst.right[k] = pst.subtree_total(2 * k + 2);
        }
        Ok(pst)
    }

    fn subtree_total(&self, slot: usize) -> u64 {
        if slot < self.ids.len() {
            self.left[slot] + self.weights[slot] + self.right[slot]
        } else {
            0
        }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// `|M|`.
    pub fn total(&self) -> u64 {
        self.subtree_total(0)
    }

    pub fn weight(&self, id: usize) -> Option<u64> {
        self.slots.get(&id).map(|&k| self.weights[k])
    }

    /// Number of levels.
    pub fn depth(&self) -> usize {
        (usize::BITS - self.ids.len().leading_zeros()) as usize
    }

    pub fn node(&self, slot: usize) -> Option<PstNode> {
        (slot < self.ids.len()).then(|| PstNode {
            left: self.left[slot],
            id: self.ids[slot],
            weight: self.weights[slot],
            right: self.right[slot],
        })
    }

    /// Entries in insertion order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.ids.iter().copied().zip(self.weights.iter().copied())
    }

    /// Ids with positive weight, in insertion order.
    pub fn support(&self) -> Vec<usize> {
        self.entries().filter(|&(_, w)| w > 0).map(|(id, _)| id).collect()
    }

    /// Element at position `rho` in `1..=total` of the implicit flat array.
    pub fn dispatch(&self, mut rho: u64) -> usize {
        debug_assert!(rho >= 1 && rho <= self.total());
        let mut slot = 0;
        loop {
            let left = self.left[slot];
            let k = self.weights[slot];
            if rho <= left {
                slot = 2 * slot + 1;
            } else if rho - left <= k {
                return self.ids[slot];
            } else {
                rho -= left + k;
                slot = 2 * slot + 2;
            }
        }
    }

    pub fn sample(&self, rng: &mut Rng) -> Result<usize> {
        let total = self.total();
        if total == 0 {
            return Err(Error::EmptyMultiset);
        }
        Ok(self.dispatch(rng.one_to(total)))
    }

    /// Sets the weight of `id` and repairs the cached sums on the path to
    /// the root. Returns the number of slots touched.
    pub fn update(&mut self, id: usize, weight: u64) -> Result<usize> {
        let mut slot = *self.slots.get(&id).ok_or(Error::UnknownId(id))?;
        self.weights[slot] = weight;
        let mut touched = 1;
        while slot > 0 {
            let parent = (slot - 1) / 2;
            let total = self.subtree_total(slot);
            if slot % 2 == 1 {
                self.left[parent] = total;
            } else {
                self.right[parent] = total;
            }
            slot = parent;
            touched += 1;
        }
        Ok(touched)
    }

    /// Recomputes every subtree total and compares with the cached sums.
    pub fn audit(&self) -> bool {
        let n = self.ids.len();
        let mut totals = vec![0u64; n];
        let at = |totals: &[u64], s: usize| if s < n { totals[s] } else { 0 };
        for k in (0..n).rev() {
            let (l, r) = (at(&totals, 2 * k + 1), at(&totals, 2 * k + 2));
            if l != self.left[k] || r != self.right[k] {
                return false;
            }
            totals[k] = l + self.weights[k] + r;
        }
        true
    }
}
