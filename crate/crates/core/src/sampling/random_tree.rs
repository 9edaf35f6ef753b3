//! Uniform random plane trees.

use super::rng::Rng;
use crate::error::{Error, Result};
use crate::process::SyntaxTree;

/// Each of the `C_n` plane trees of size `n` with probability `1 / C_n`.
///
/// A uniformly shuffled word of `n - 1` node markers and `n - 1` separators
/// gives a uniform composition `(d_1, ..., d_n)` of `n - 1`. Exactly one of
/// its `n` rotations is a Łukasiewicz word (the one starting after the first
/// minimum of the partial sums of `d_i - 1`), and every tree is hit by
/// exactly `n` compositions.
pub fn uniform_random_tree(n: usize, rng: &mut Rng) -> Result<SyntaxTree> {
    if n == 0 {
        return Err(Error::OutOfRange("tree size must be at least 1".into()));
    }
    let mut word: Vec<bool> = (0..2 * (n - 1)).map(|k| k < n - 1).collect();
    rng.shuffle(&mut word);
    let mut degrees = vec![0usize; n];
    let mut part = 0;
    for marker in word {
        if marker {
            degrees[part] += 1;
        } else {
            part += 1;
        }
    }
    let mut sum = 0i64;
    let mut min = i64::MAX;
    let mut cut = 0;
    for (k, &d) in degrees.iter().enumerate() {
        sum += d as i64 - 1;
        if sum < min {
            min = sum;
            cut = k + 1;
        }
    }
    degrees.rotate_left(cut % n);
    SyntaxTree::from_degrees(&degrees)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    #[test]
    fn single_node() {
        assert_eq!(uniform_random_tree(1, &mut Rng::seeded(0)).unwrap().len(), 1);
        assert!(uniform_random_tree(0, &mut Rng::seeded(0)).is_err());
    }

    #[test]
    fn all_shapes_appear() {
        let mut rng = Rng::seeded(2);
        let mut seen = HashMap::new();
        for _ in 0..3000 {
            let t = uniform_random_tree(4, &mut rng).unwrap();
            *seen.entry(t.structure()).or_insert(0) += 1;
        }
        assert_eq!(seen.len(), 5);
        assert!(seen.values().all(|&c| (480..720).contains(&c)), "{:?}", seen);
    }

    #[test]
    fn large_trees_are_valid() {
        let t = uniform_random_tree(100_000, &mut Rng::seeded(4)).unwrap();
        assert_eq!(t.len(), 100_000);
    }
}
