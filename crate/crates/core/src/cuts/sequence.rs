//! Total number of admissible cuts over all trees of a size.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::admissible::cut_count;
use crate::error::{Error, Result};
use crate::sweep::sweep_trees;

pub const BRUTE_CUT_LIMIT: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CutMethod {
    Brute,
    Recurrence,
}

/// `m_0..=m_n`, the cumulative cut counts.
pub fn cut_count_sequence(n: usize, method: CutMethod) -> Result<Vec<BigUint>> {
    match method {
        CutMethod::Brute => brute(n),
        CutMethod::Recurrence => recurrence(n),
    }
}

fn brute(n: usize) -> Result<Vec<BigUint>> {
    if n > BRUTE_CUT_LIMIT {
        return Err(Error::OracleLimit { n, limit: BRUTE_CUT_LIMIT });
    }
    let mut out = vec![BigUint::zero()];
    for size in 1..=n {
        let total = sweep_trees(
            size,
            BRUTE_CUT_LIMIT,
            BigUint::zero,
            |acc, t| acc + cut_count(t),
            |a, b| a + b,
        )?;
        out.push(total);
    }
    Ok(out)
}

fn poly(coeffs: &[i64], n: i64) -> BigInt {
    let mut acc = BigInt::zero();
    for &c in coeffs.iter().rev() {
        acc = acc * n + c;
    }
    acc
}

/// Order-4 relation solved for `m_{k+4}`; coefficients are listed from the
/// constant term up.
fn recurrence(n: usize) -> Result<Vec<BigUint>> {
    let mut m: Vec<BigInt> = [0, 1, 2, 7].iter().map(|&x| BigInt::from(x)).collect();
    while m.len() <= n {
        let k = m.len() - 4;
        let kk = k as i64;
        let lead = poly(&[168, 146, 42, 4], kk);
        if lead.is_zero() {
            return Err(Error::SingularRecurrence(k));
        }
        let rhs = poly(&[0, -500, 0, 2000], kk) * &m[k]
            + poly(&[120, -220, -1380, -920], kk) * &m[k + 1]
            - poly(&[1488, 1626, 387, -21], kk) * &m[k + 2]
            + poly(&[1104, 1088, 351, 37], kk) * &m[k + 3];
        let (q, r) = rhs.div_rem(&lead);
        if !r.is_zero() || q.is_negative() {
            return Err(Error::NonIntegralTerm(k + 4));
        }
        m.push(q);
    }
    m.truncate(n + 1);
    Ok(m.into_iter().map(|x| x.to_biguint().expect("checked non-negative")).collect())
}
