//! Exhaustive enumeration of plane trees of a given size.
//!
//! Trees are listed in lexicographic order of their prefix-order degree
//! word. Every tree has a rank in that order, so a sweep can be split into
//! disjoint rank ranges and processed in parallel with a deterministic merge.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::process::tree::SyntaxTree;

/// Default largest size accepted by [`enumerate_trees`].
pub const DEFAULT_ENUMERATION_LIMIT: usize = 12;

/// Hard ceiling: completion counts are kept in `u64`.
const MAX_ENUMERATION_SIZE: usize = 30;

/// Number of ways to finish a degree word with `remaining` nodes when
/// `open` child slots are pending: the ballot number
/// `open / remaining * binom(2 remaining - open - 1, remaining - 1)`.
struct CompletionTable {
    table: Vec<Vec<u64>>,
}

impl CompletionTable {
    fn new(n: usize) -> Self {
        let mut table = vec![vec![0u64; n + 2]; n + 1];
        table[0][0] = 1;
        for r in 1..=n {
            for s in 1..=r {
                // The next node uses one slot and opens `d` new ones.
                table[r][s] = (0..r).filter(|&d| s - 1 + d < r).map(|d| table[r - 1][s - 1 + d]).sum();
            }
        }
        CompletionTable { table }
    }

    fn get(&self, remaining: usize, open: usize) -> u64 {
        if open > remaining {
            0
        } else {
            self.table[remaining][open]
        }
    }
}

/// Iterator over the trees of size `n` with ranks in a given range.
pub struct TreeEnumerator {
    n: usize,
    table: CompletionTable,
    ranks: Range<u64>,
}

impl TreeEnumerator {
    /// Total number of trees of this size (the Catalan number `C_n`).
    pub fn total(&self) -> u64 {
        self.table.get(self.n, 1)
    }

    fn unrank(&self, mut rank: u64) -> Vec<usize> {
        let n = self.n;
        let mut degrees = Vec::with_capacity(n);
        let mut open = 1usize;
        for p in 0..n {
            let remaining = n - p - 1;
            let mut d = 0;
            loop {
                let next_open = open - 1 + d;
                let count = self.table.get(remaining, next_open);
                if rank < count {
                    break;
                }
                rank -= count;
                d += 1;
            }
            degrees.push(d);
            open = open - 1 + d;
        }
        degrees
    }
}

impl Iterator for TreeEnumerator {
    type Item = SyntaxTree;

    fn next(&mut self) -> Option<SyntaxTree> {
        let rank = self.ranks.next()?;
        Some(SyntaxTree::from_degrees(&self.unrank(rank)).expect("unranked words are valid"))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.ranks.size_hint()
    }
}

impl ExactSizeIterator for TreeEnumerator {}

/// All plane trees of size `n` (with `n <=` [`DEFAULT_ENUMERATION_LIMIT`]).
pub fn enumerate_trees(n: usize) -> Result<TreeEnumerator> {
    enumerate_trees_with_limit(n, DEFAULT_ENUMERATION_LIMIT)
}

pub fn enumerate_trees_with_limit(n: usize, limit: usize) -> Result<TreeEnumerator> {
    let limit = limit.min(MAX_ENUMERATION_SIZE);
    if n == 0 {
        return Err(Error::OutOfRange("tree size must be at least 1".into()));
    }
    if n > limit {
        return Err(Error::OracleLimit { n, limit });
    }
    let table = CompletionTable::new(n);
    let total = table.get(n, 1);
    Ok(TreeEnumerator { n, table, ranks: 0..total })
}

/// Trees of size `n` whose canonical ranks fall in `ranks`.
pub fn enumerate_trees_range(n: usize, limit: usize, ranks: Range<u64>) -> Result<TreeEnumerator> {
    let mut it = enumerate_trees_with_limit(n, limit)?;
    let total = it.total();
    it.ranks = ranks.start.min(total)..ranks.end.min(total);
    Ok(it)
}

/// Splits `0..total` into `parts` contiguous ranges of near-equal length.
pub fn partition_ranks(total: u64, parts: usize) -> Vec<Range<u64>> {
    let parts = parts.max(1) as u64;
    (0..parts)
        .map(|k| (total * k / parts)..(total * (k + 1) / parts))
        .filter(|r| !r.is_empty())
        .collect()
}
