//! Per-level node counts of the interleaving tree.
//!
//! Level `l` (counted from the root, `0..n`) holds the run prefixes of
//! length `l + 1`. Formulas that count from the leaves use `i = n - 1 - l`.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::admissible::{enumerate_admissible_cuts_with_limit, DEFAULT_CUT_LIMIT};
use super::modular::prefix_counts;
use crate::counts::hook_count;
use crate::counts::bigmath::ln_biguint;
use crate::error::{Error, Result};
use crate::process::{annotate_weights, SyntaxTree};

pub const FAST_PROFILE_LIMIT: usize = 5000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileMethod {
    /// Sum of increasing labellings over admissible cuts.
    Oracle,
    /// Prefix-count recursion `a(T) = 1 + int prod a(child)` on exponential
    /// generating functions, computed modulo primes.
    Fast,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelProfile {
    counts: Vec<BigUint>,
}

impl LevelProfile {
    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Nodes at depth `level` (root = 0).
    pub fn at_level(&self, level: usize) -> &BigUint {
        &self.counts[level]
    }

    /// Nodes at height `i` above the leaves (leaves = 0).
    pub fn from_leaves(&self, i: usize) -> &BigUint {
        &self.counts[self.counts.len() - 1 - i]
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("level,count\n");
        for (level, c) in self.counts.iter().enumerate() {
            out.push_str(&format!("{},{}\n", level, c));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let levels: Vec<_> = self
            .counts
            .iter()
            .enumerate()
            .map(|(level, c)| {
                json!({
                    "level": level,
                    "from_leaves": self.counts.len() - 1 - level,
                    "count": c.to_string(),
                    "log10": ln_biguint(c) / std::f64::consts::LN_10,
                })
            })
            .collect();
        json!({ "levels": levels, "total": self.total().to_string() })
    }
}

pub fn level_profile(tree: &SyntaxTree, method: ProfileMethod) -> Result<LevelProfile> {
    match method {
        ProfileMethod::Oracle => oracle_profile(tree, DEFAULT_CUT_LIMIT),
        ProfileMethod::Fast => fast_profile(tree),
    }
}

pub fn oracle_profile(tree: &SyntaxTree, limit: usize) -> Result<LevelProfile> {
    let mut counts = vec![BigUint::zero(); tree.len()];
    for cut in enumerate_admissible_cuts_with_limit(tree, limit)? {
        counts[cut.size() - 1] += cut.labellings;
    }
    Ok(LevelProfile { counts })
}

/// `n_T`, the number of nodes of the interleaving tree.
pub fn semantic_size(tree: &SyntaxTree) -> Result<BigUint> {
    Ok(fast_profile(tree)?.total())
}

fn fast_profile(tree: &SyntaxTree) -> Result<LevelProfile> {
    let n = tree.len();
    if n > FAST_PROFILE_LIMIT {
        return Err(Error::OracleLimit { n, limit: FAST_PROFILE_LIMIT });
    }
    // Profile entries are non-decreasing, so the last one (the run count)
    // bounds them all.
    let runs = hook_count(&annotate_weights(tree.clone()));
    Ok(LevelProfile { counts: prefix_counts(tree, runs.bits()) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::{parse_process, path_tree, star_tree};

    use num_traits::One;
    use crate::sampling::{uniform_random_tree, Rng};

    /// Direct big-integer recursion: `a_0 = 1`, `a_{k+1}` = binomial
    /// convolution of the children's sequences at `k`.
    fn direct_prefix_counts(tree: &SyntaxTree, v: usize) -> Vec<BigUint> {
        let mut forest = vec![BigUint::one()];
        for &c in tree.child_indices(v) {
            let g = direct_prefix_counts(tree, c);
            let mut out = vec![BigUint::zero(); forest.len() + g.len() - 1];
            for (i, x) in forest.iter().enumerate() {
                for (j, y) in g.iter().enumerate() {
                    out[i + j] += crate::counts::bigmath::binomial((i + j) as u64, j as u64) * x * y;
                }
            }
            forest = out;
        }
        let mut own = vec![BigUint::one()];
        own.extend(forest);
        own
    }

    #[test]
    fn modular_matches_direct_recursion() {
        let mut rng = Rng::seeded(31);
        for n in [2usize, 9, 40, 120, 250] {
            for _ in 0..3 {
                let t = uniform_random_tree(n, &mut rng).unwrap();
                let direct = direct_prefix_counts(&t, 0)[1..].to_vec();
                assert_eq!(level_profile(&t, ProfileMethod::Fast).unwrap().counts(), direct.as_slice());
            }
        }
        let star = star_tree(300);
        assert_eq!(level_profile(&star, ProfileMethod::Fast).unwrap().counts(), &direct_prefix_counts(&star, 0)[1..]);
    }

    fn small(p: &LevelProfile) -> Vec<u64> {
        p.counts().iter().map(|c| c.try_into().unwrap()).collect()
    }

    #[test]
    fn example_profile() {
        let t = parse_process("a.b.(c || d.(e || f))", false).unwrap();
        for method in [ProfileMethod::Fast, ProfileMethod::Oracle] {
            let p = level_profile(&t, method).unwrap();
            assert_eq!(small(&p), [1, 1, 2, 4, 8, 8]);
            assert_eq!(p.at_level(3), &BigUint::from(4u32));
            assert_eq!(p.from_leaves(0), &BigUint::from(8u32));
        }
        assert_eq!(semantic_size(&t).unwrap(), BigUint::from(24u32));
    }

    #[test]
    fn paths_and_stars() {
        let p = level_profile(&path_tree(7), ProfileMethod::Fast).unwrap();
        assert_eq!(small(&p), [1; 7]);
        let s = level_profile(&star_tree(4), ProfileMethod::Fast).unwrap();
        assert_eq!(small(&s), [1, 3, 6, 6]);
        assert_eq!(semantic_size(&path_tree(1)).unwrap(), BigUint::one());
    }

    #[test]
    fn star_forty_is_huge() {
        let s = semantic_size(&star_tree(40)).unwrap();
        // 2.03e46 = 203 * 10^44
        assert!(s > BigUint::from(203u32) * BigUint::from(10u32).pow(44));
        // sum_{k=0}^{39} 39!/(39-k)!
        let mut expected = BigUint::zero();
        let mut term = BigUint::one();
        for k in 0..=39u32 {
            expected += &term;
            term *= 39 - k;
        }
        assert_eq!(s, expected);
    }

    #[test]
    fn csv_and_json() {
        let s = level_profile(&star_tree(4), ProfileMethod::Fast).unwrap();
        assert_eq!(s.to_csv(), "level,count\n0,1\n1,3\n2,6\n3,6\n");
        let j = s.to_json();
        assert_eq!(j["total"], "16");
        assert_eq!(j["levels"][1]["count"], "3");
        assert!((j["levels"][3]["log10"].as_f64().unwrap() - 6f64.log10()).abs() < 1e-12);
    }

    #[test]
    fn fast_limit() {
        assert!(matches!(semantic_size(&path_tree(5001)), Err(Error::OracleLimit { .. })));
    }
}
