//! Exact counting sequences of plane process trees and their semantics.
//!
//! `C_n` is the number of plane trees with `n` nodes (`C_1 = 1`), i.e. the
//! Catalan numbers shifted by one.

use std::f64::consts::{E, PI};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::approx::ApproxReal;
use super::bigmath::{binomial, factorial, product_tree, product_u64, ratio, ratio_int};
use crate::error::{Error, Result};
use crate::process::WeightedTree;

fn require_positive(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        Err(Error::OutOfRange(format!("{} requires n >= 1", what)))
    } else {
        Ok(())
    }
}

/// `C_n = binom(2n - 2, n - 1) / n`.
pub fn catalan(n: usize) -> Result<BigUint> {
    require_positive(n, "catalan")?;
    let n = n as u64;
    Ok(binomial(2 * n - 2, n - 1) / n)
}

/// Number of increasing plane trees with `n` nodes:
/// `1 * 3 * ... * (2n - 3) = (2n - 2)! / (2^(n-1) (n - 1)!)`.
pub fn increasing_count(n: usize) -> Result<BigUint> {
    require_positive(n, "increasing_count")?;
    Ok(product_u64((1..n as u64).map(|k| 2 * k - 1)))
}

/// Number of concurrent runs of a tree (its increasing labellings, the
/// linear extensions of its tree-poset): `n! / prod |T(v)|`.
pub fn hook_count(tree: &WeightedTree) -> BigUint {
    let n = tree.len() as u64;
    let hooks: Vec<u64> = tree.weights().iter().map(|&w| w as u64).filter(|&w| w > 1).collect();
    factorial(n) / product_u64(hooks)
}

/// `W_n = n! / 2^(n-1)`, the mean number of runs over all trees of size `n`.
pub fn mean_width(n: usize) -> Result<BigRational> {
    require_positive(n, "mean_width")?;
    Ok(ratio(factorial(n as u64), BigUint::one() << (n - 1)))
}

/// Stirling form `2 sqrt(2 pi n) (n / 2e)^n` of [`mean_width`].
pub fn mean_width_stirling(n: usize) -> f64 {
    let n = n as f64;
    2.0 * (2.0 * PI * n).sqrt() * (n / (2.0 * E)).powf(n)
}

fn check_level(n: usize, i: usize) -> Result<()> {
    require_positive(n, "level widths")?;
    if i >= n {
        return Err(Error::OutOfRange(format!("level index i = {} must be below n = {}", i, n)));
    }
    Ok(())
}

/// Mean number of semantic-tree nodes at depth `n - 1 - i` (so `i = 0` is
/// the leaf level and `i = n - 1` the root):
///
/// `2^i (2n-2i-1)! (n-1)! / ((2n-i-1)! (n-i-1)!) * n! / (2^(n-1) i!)`.
pub fn mean_level_width(n: usize, i: usize) -> Result<BigRational> {
    check_level(n, i)?;
    let (n, i) = (n as u64, i as u64);
    let num = product_tree(&[
        BigUint::one() << i,
        factorial(2 * n - 2 * i - 1),
        factorial(n - 1),
        factorial(n),
    ]);
    let den = product_tree(&[
        factorial(2 * n - i - 1),
        factorial(n - i - 1),
        BigUint::one() << (n - 1),
        factorial(i),
    ]);
    Ok(ratio(num, den))
}

/// Cumulative node count at depth `n - 1 - i` over all trees of size `n`.
pub fn cumulative_level_width(n: usize, i: usize) -> Result<BigUint> {
    let mean = mean_level_width(n, i)?;
    let total = mean * ratio_int(catalan(n)?);
    Ok(total.to_integer().to_biguint().expect("non-negative"))
}

/// `[z^n] (C(z)/z)^k = k/n * binom(k + 2n - 1, n - 1)`.
pub fn catalan_power_coeff(n: usize, k: usize) -> Result<BigUint> {
    if n == 0 || k == 0 {
        return Err(Error::OutOfRange("catalan_power_coeff requires n >= 1 and k >= 1".into()));
    }
    let (n, k) = (n as u64, k as u64);
    Ok(binomial(k + 2 * n - 1, n - 1) * k / n)
}

/// `1 <= (2^(n-1) i! / n!) * W^i_n <= 1 / (1 - i^2 / 2n)`, checked exactly.
pub fn level_bounds_check(n: usize, i: usize) -> Result<bool> {
    check_level(n, i)?;
    if i * i >= 2 * n {
        return Err(Error::OutOfRange(format!("upper bound needs i^2 < 2n (n = {}, i = {})", n, i)));
    }
    let normalized = mean_level_width(n, i)?
        * ratio(BigUint::one() << (n - 1), BigUint::one())
        * ratio(factorial(i as u64), factorial(n as u64));
    let upper = BigRational::new(BigInt::from(2 * n), BigInt::from(2 * n - i * i));
    Ok(BigRational::one() <= normalized && normalized <= upper)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SizeMethod {
    ExactSum,
    Recurrence,
}

/// Mean number of nodes of the semantic tree over trees of size `n`
/// (`S_0 = 0` by convention).
pub fn mean_size(n: usize, method: SizeMethod) -> Result<BigRational> {
    Ok(mean_size_sequence(n, method)?.pop().expect("sequence is non-empty"))
}

/// `S_0 ..= S_n`.
pub fn mean_size_sequence(n: usize, method: SizeMethod) -> Result<Vec<BigRational>> {
    match method {
        SizeMethod::ExactSum => (0..=n)
            .map(|m| {
                if m == 0 {
                    return Ok(BigRational::zero());
                }
                (0..m).map(|i| mean_level_width(m, i)).sum::<Result<BigRational>>()
            })
            .collect(),
        SizeMethod::Recurrence => {
            let mut s: Vec<BigRational> =
                [0u32, 1, 2].iter().map(|&v| BigRational::from_integer(v.into())).collect();
            let mut k = 0usize;
            while s.len() <= n {
                let m = BigInt::from(k);
                let p = |cs: &[i64]| -> BigInt {
                    cs.iter().rev().fold(BigInt::zero(), |acc, &c| acc * &m + c)
                };
                let a = p(&[0, 12, 22, 12, 2]);
                let b = p(&[18, 87, 87, 32, 4]);
                let c = p(&[39, 106, 85, 24, 2]);
                let d = p(&[15, 31, 20, 4]);
                if d.is_zero() {
                    return Err(Error::SingularRecurrence(k));
                }
                let next = (BigRational::from_integer(a) * &s[k]
                    - BigRational::from_integer(b) * &s[k + 1]
                    + BigRational::from_integer(c) * &s[k + 2])
                    / BigRational::from_integer(d);
                s.push(next);
                k += 1;
            }
            s.truncate(n + 1);
            Ok(s)
        }
    }
}

/// `R_0 ..= R_n` from the order-3 recurrence with `R_0 = 0, R_1 = 1,
/// R_2 = 2`. `R_n = S_n 2^(n-1) / n!` tends to `e`.
pub fn r_sequence(n: usize) -> Result<Vec<BigRational>> {
    let mut r: Vec<BigRational> =
        [0u32, 1, 2].iter().map(|&v| BigRational::from_integer(v.into())).collect();
    let mut k = 0usize;
    while r.len() <= n {
        let m = BigInt::from(k);
        let p = |cs: &[i64]| -> BigInt { cs.iter().rev().fold(BigInt::zero(), |acc, &c| acc * &m + c) };
        let a = p(&[0, 16]);
        let b = p(&[3, 12, 4]) * 4;
        let c = p(&[13, 31, 18, 2]) * 2;
        let d = p(&[15, 31, 20, 4]);
        if d.is_zero() {
            return Err(Error::SingularRecurrence(k));
        }
        // d R_{k+3} = 16k R_k - 4(4k^2+12k+3) R_{k+1} + 2(2k^3+18k^2+31k+13) R_{k+2}
        let next = (BigRational::from_integer(a) * &r[k] - BigRational::from_integer(b) * &r[k + 1]
            + BigRational::from_integer(c) * &r[k + 2])
            / BigRational::from_integer(d);
        r.push(next);
        k += 1;
    }
    r.truncate(n + 1);
    Ok(r)
}

/// Natural log of the four-term expansion
/// `e sqrt(2 pi n) (n / 2e)^n (2 + 2/(3n) + 49/(36n^2) + 27449/(6480n^3))`.
pub fn asymptotic_size_ln(n: usize) -> f64 {
    let x = n as f64;
    let series = 2.0 + 2.0 / (3.0 * x) + 49.0 / (36.0 * x * x) + 27449.0 / (6480.0 * x * x * x);
    1.0 + 0.5 * (2.0 * PI * x).ln() + x * (x / (2.0 * E)).ln() + series.ln()
}

/// Four-term asymptotic expansion of the mean semantic size. The error
/// field covers floating-point evaluation only, not the `O(n^-4)` tail.
pub fn asymptotic_size(n: usize) -> Result<ApproxReal> {
    require_positive(n, "asymptotic_size")?;
    let ln = asymptotic_size_ln(n);
    let value = ln.exp();
    Ok(ApproxReal::new(value, value * (ln.abs() + 8.0) * f64::EPSILON))
}

/// Leading term `2 e sqrt(2 pi n) (n / 2e)^n` alone, in log form.
pub fn asymptotic_size_leading_ln(n: usize) -> f64 {
    let x = n as f64;
    1.0 + 0.5 * (2.0 * PI * x).ln() + x * (x / (2.0 * E)).ln() + 2f64.ln()
}

/// Fraction of the mean size carried by the last `levels` levels (those
/// nearest the leaves).
pub fn tail_level_fraction(n: usize, levels: usize) -> Result<f64> {
    let total = mean_size(n, SizeMethod::ExactSum)?;
    let tail: BigRational = (0..levels.min(n)).map(|i| mean_level_width(n, i)).sum::<Result<_>>()?;
    Ok(super::bigmath::rational_to_f64(&(tail / total)))
}

/// Catalan asymptotic series `4^(n-1) / sqrt(pi n^3) * (1 + 3/(8n) + ...)`
/// with the first `terms` correction terms (at most 4).
pub fn catalan_asymptotic(n: usize, terms: usize) -> f64 {
    const COEFFS: [f64; 5] = [1.0, 3.0 / 8.0, 25.0 / 128.0, 105.0 / 1024.0, 1659.0 / 32768.0];
    let x = n as f64;
    let series: f64 = COEFFS.iter().take(terms + 1).enumerate().map(|(j, c)| c / x.powi(j as i32)).sum();
    4f64.powf(x - 1.0) / (PI * x * x * x).sqrt() * series
}
