//! Probability of a run prefix and run counting without the semantic tree.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;

use crate::counts::bigmath::{FactoredRatio, PrimeSieve};
use crate::error::{Error, Result};
use crate::process::{RunPrefix, WeightedTree};

/// Result of [`prefix_probability_counted`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixProbability {
    pub value: BigRational,
    /// Multiply-divide steps performed.
    pub steps: usize,
}

/// `rho = prod_{k=2}^{p} |T(a_k)| / (n - k + 1)`.
pub fn prefix_probability(tree: &WeightedTree, prefix: &RunPrefix) -> Result<BigRational> {
    Ok(prefix_probability_counted(tree, prefix)?.value)
}

pub fn prefix_probability_counted(tree: &WeightedTree, prefix: &RunPrefix) -> Result<PrefixProbability> {
    let checked = RunPrefix::new(tree.tree(), prefix.actions().to_vec())?;
    let sieve = PrimeSieve::new(tree.len());
    let (rho, steps) = product(tree, &checked, &sieve);
    Ok(PrefixProbability { value: rho.to_ratio(), steps })
}

fn product<'s>(tree: &WeightedTree, prefix: &RunPrefix, sieve: &'s PrimeSieve) -> (FactoredRatio<'s>, usize) {
    let n = tree.len();
    let mut rho = FactoredRatio::one(sieve);
    let mut steps = 0;
    for (i, &a) in prefix.actions().iter().enumerate().skip(1) {
        rho.mul_ratio(tree.weight(a), n - i);
        steps += 1;
    }
    (rho, steps)
}

/// `1 / rho` of the prefix-order traversal, i.e. the number of runs.
pub fn count_runs_via_probability(tree: &WeightedTree) -> Result<BigUint> {
    let sieve = PrimeSieve::new(tree.len());
    let (rho, _) = product(tree, &RunPrefix::prefix_order(tree.tree()), &sieve);
    let num = rho.numerator();
    if !num.is_one() {
        return Err(Error::NonIntegralTerm(tree.len()));
    }
    Ok(rho.denominator())
}
