//! Parallel folds over all plane trees of a given size.

use rayon::prelude::*;

use crate::error::Result;
use crate::process::{enumerate_trees_range, enumerate_trees_with_limit, partition_ranks, SyntaxTree};

const CHUNKS: usize = 64;

/// Folds `step` over every tree of size `n` in canonical order chunks, then
/// combines the chunk results left to right, so the result does not depend
/// on the number of worker threads.
pub fn sweep_trees<T, I, F, C>(n: usize, limit: usize, init: I, step: F, combine: C) -> Result<T>
where
    T: Send,
    I: Fn() -> T + Sync,
    F: Fn(T, &SyntaxTree) -> T + Sync,
    C: Fn(T, T) -> T,
{
    let total = enumerate_trees_with_limit(n, limit)?.total();
    let partials = partition_ranks(total, CHUNKS)
        .into_par_iter()
        .map(|ranks| {
            let trees = enumerate_trees_range(n, limit, ranks)?;
            Ok(trees.fold(init(), |acc, t| step(acc, &t)))
        })
        .collect::<Result<Vec<T>>>()?;
    Ok(partials.into_iter().fold(init(), combine))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::DEFAULT_ENUMERATION_LIMIT;

    #[test]
    fn counts_all_trees() {
        let count = sweep_trees(8, DEFAULT_ENUMERATION_LIMIT, || 0u64, |a, _| a + 1, |a, b| a + b).unwrap();
        assert_eq!(count, 429);
        let order = sweep_trees(
            4,
            DEFAULT_ENUMERATION_LIMIT,
            Vec::new,
            |mut a, t| {
                a.push(t.structure());
                a
            },
            |mut a, b| {
                a.extend(b);
                a
            },
        )
        .unwrap();
        let serial: Vec<String> = crate::process::enumerate_trees(4).unwrap().map(|t| t.structure()).collect();
        assert_eq!(order, serial);
    }
}
