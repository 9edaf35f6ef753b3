//! Unordered (non-plane) rooted trees.

use std::f64::consts::{E, PI};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;

use super::bigmath::{factorial, ln_biguint, ratio, rational_to_f64};
use crate::error::{Error, Result};

/// Reference value of the radius of convergence of the rooted-tree series.
pub const ETA: f64 = 0.3383218;
/// Reference value of the constant in the asymptotic of the non-plane mean.
pub const GAMMA: f64 = 1.559490;

/// `T_1..=T_n` via the Euler transform
/// `T_{m+1} = (1/m) sum_{k=1}^{m} (sum_{d | k} d T_d) T_{m-k+1}`.
pub fn nonplane_counts(n: usize) -> Result<Vec<BigUint>> {
    if n < 1 {
        return Err(Error::OutOfRange("nonplane_count requires n >= 1".into()));
    }
    let mut t = vec![BigUint::zero(), BigUint::from(1u32)];
    let mut divisor_sums = vec![BigUint::zero()];
    for m in 1..n {
        let mut s = BigUint::zero();
        for d in 1..=m {
            if m % d == 0 {
                s += &t[d] * d;
            }
        }
        divisor_sums.push(s);
        let mut acc = BigUint::zero();
        for k in 1..=m {
            acc += &divisor_sums[k] * &t[m - k + 1];
        }
        t.push(acc / m);
    }
    t.remove(0);
    Ok(t)
}

pub fn nonplane_count(n: usize) -> Result<BigUint> {
    Ok(nonplane_counts(n)?.pop().expect("non-empty"))
}

/// `V_n = (n-1)! / T_n`: increasing non-plane labellings per tree.
pub fn nonplane_mean_width(n: usize) -> Result<BigRational> {
    let t = nonplane_count(n)?;
    Ok(ratio(factorial(n as u64 - 1), t))
}

/// Estimate of `eta` from `r_m = T_{m+1} / T_m ~ (1/eta)(1 - 3/(2m))`,
/// removing the `1/m` term by Richardson extrapolation at `m = n - 2`.
pub fn eta_estimate(n: usize) -> Result<f64> {
    if n < 4 {
        return Err(Error::OutOfRange("eta_estimate requires n >= 4".into()));
    }
    let t = nonplane_counts(n)?;
    let r = |m: usize| ratio(t[m].clone(), t[m - 1].clone());
    let m = n - 2;
    let extrapolated = r(m + 1) * BigRational::from_integer((m as i64 + 1).into())
        - r(m) * BigRational::from_integer((m as i64).into());
    Ok(1.0 / rational_to_f64(&extrapolated))
}

/// `ln` of the asymptotic form `2 sqrt(2) pi n / gamma (n eta / e)^n` of `V_n`.
pub fn nonplane_mean_width_asymptotic_ln(n: usize) -> f64 {
    let nf = n as f64;
    (2.0 * 2f64.sqrt() * PI * nf / GAMMA).ln() + nf * (nf * ETA / E).ln()
}

/// `ln V_n - ln(asymptotic form)`.
pub fn nonplane_asymptotic_deviation(n: usize) -> Result<f64> {
    let t = nonplane_count(n)?;
    let ln_v = ln_biguint(&factorial(n as u64 - 1)) - ln_biguint(&t);
    Ok(ln_v - nonplane_mean_width_asymptotic_ln(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::{enumerate_trees, SyntaxTree};
    use std::collections::BTreeSet;

    fn canonical(t: &SyntaxTree, v: crate::process::NodeId) -> String {
        let mut parts: Vec<String> = t.children(v).map(|c| canonical(t, c)).collect();
        parts.sort();
        format!("({})", parts.concat())
    }

    #[test]
    fn small_values() {
        let t: Vec<u64> = nonplane_counts(10).unwrap().iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(t, [1, 1, 2, 4, 9, 20, 48, 115, 286, 719]);
        assert!(nonplane_count(0).is_err());
    }

    #[test]
    fn matches_deduplicated_plane_trees() {
        for n in 1..=9 {
            let shapes: BTreeSet<String> =
                enumerate_trees(n).unwrap().map(|t| canonical(&t, t.root())).collect();
            assert_eq!(BigUint::from(shapes.len()), nonplane_count(n).unwrap(), "n = {}", n);
        }
    }

    #[test]
    fn mean_width_values() {
        assert_eq!(nonplane_mean_width(1).unwrap(), ratio(1u32.into(), 1u32.into()));
        assert_eq!(nonplane_mean_width(4).unwrap(), ratio(3u32.into(), 2u32.into()));
    }

    #[test]
    fn eta_close_to_reference() {
        let eta = eta_estimate(400).unwrap();
        assert!((eta - ETA).abs() < 1e-3, "{}", eta);
        assert!((eta_estimate(200).unwrap() - ETA).abs() > (eta - ETA).abs());
    }

    #[test]
    fn asymptotic_deviation_shrinks() {
        let d50 = nonplane_asymptotic_deviation(50).unwrap().abs();
        let d100 = nonplane_asymptotic_deviation(100).unwrap().abs();
        let d200 = nonplane_asymptotic_deviation(200).unwrap().abs();
        assert!(d50 > d100 && d100 > d200);
        assert!(d200 < 1e-3);
    }
}
