//! Arbitrary-precision helpers shared by the counting code.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Product of `values` by balanced splitting, which keeps the operands of
/// each multiplication of similar size.
pub fn product_tree(values: &[BigUint]) -> BigUint {
    match values.len() {
        0 => BigUint::one(),
        1 => values[0].clone(),
        len => {
            let (left, right) = values.split_at(len / 2);
            product_tree(left) * product_tree(right)
        }
    }
}

pub fn product_u64<I: IntoIterator<Item = u64>>(values: I) -> BigUint {
    // Pack small factors into machine words first.
    let mut words = Vec::new();
    let mut acc: u64 = 1;
    for v in values {
        match acc.checked_mul(v) {
            Some(p) => acc = p,
            None => {
                words.push(BigUint::from(acc));
                acc = v;
            }
        }
    }
    words.push(BigUint::from(acc));
    product_tree(&words)
}

pub fn factorial(n: u64) -> BigUint {
    product_u64(2..=n)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    product_u64((n - k + 1)..=n) / factorial(k)
}

pub fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn ratio_int(num: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(num))
}

/// Numerator of a non-negative integral rational.
pub fn rational_to_biguint(r: &BigRational) -> Option<BigUint> {
    if r.is_integer() && !r.is_negative() {
        r.numer().to_biguint()
    } else {
        None
    }
}

/// `x * 2^exp` without intermediate overflow.
fn ldexp(mut x: f64, mut exp: i64) -> f64 {
    while exp > 1000 {
        x *= 2f64.powi(1000);
        exp -= 1000;
    }
    while exp < -1000 {
        x *= 2f64.powi(-1000);
        exp += 1000;
    }
    x * 2f64.powi(exp as i32)
}

/// Correctly scaled conversion of a big rational to `f64` (relative error
/// a few ulps), even when numerator and denominator overflow `f64`.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    let num = r.numer().abs().to_biguint().unwrap();
    let den = r.denom().to_biguint().unwrap();
    let shift = 64 + den.bits() as i64 - num.bits() as i64;
    let q = if shift >= 0 { (num << shift as usize) / &den } else { num / (den << (-shift) as usize) };
    sign * ldexp(q.to_f64().unwrap(), -shift)
}

pub fn biguint_to_f64(x: &BigUint) -> f64 {
    rational_to_f64(&ratio_int(x.clone()))
}

/// Natural logarithm of a positive big integer.
pub fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits() as i64;
    let shift = (bits - 64).max(0);
    let top = (x >> shift as usize).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn ln_rational(r: &BigRational) -> f64 {
    let num = r.numer().to_biguint().expect("positive rational");
    let den = r.denom().to_biguint().unwrap();
    ln_biguint(&num) - ln_biguint(&den)
}

/// Smallest-prime-factor sieve.
pub struct PrimeSieve {
    spf: Vec<u32>,
}

impl PrimeSieve {
    pub fn new(limit: usize) -> Self {
        let limit = limit.max(2);
        let mut spf = vec![0u32; limit + 1];
        for i in 2..=limit {
            if spf[i] == 0 {
                let mut j = i;
                while j <= limit {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        PrimeSieve { spf }
    }

    pub fn limit(&self) -> usize {
        self.spf.len() - 1
    }

    /// Calls `f(prime)` once per prime factor of `n`, with multiplicity.
    pub fn for_each_factor(&self, mut n: usize, mut f: impl FnMut(usize)) {
        while n > 1 {
            let p = self.spf[n] as usize;
            f(p);
            n /= p;
        }
    }
}

/// A positive rational kept as a vector of prime exponents, so that long
/// products of small ratios cost one factorization per factor and a single
/// big multiplication at the end.
pub struct FactoredRatio<'s> {
    sieve: &'s PrimeSieve,
    exponents: Vec<i64>,
}

impl<'s> FactoredRatio<'s> {
    pub fn one(sieve: &'s PrimeSieve) -> Self {
        FactoredRatio { sieve, exponents: vec![0; sieve.limit() + 1] }
    }

    /// Multiplies by `num / den`; both must be positive and within the sieve.
    pub fn mul_ratio(&mut self, num: usize, den: usize) {
        let exps = &mut self.exponents;
        self.sieve.for_each_factor(num, |p| exps[p] += 1);
        self.sieve.for_each_factor(den, |p| exps[p] -= 1);
    }

    fn side(&self, positive: bool) -> BigUint {
        let mut factors = Vec::new();
        for (p, &e) in self.exponents.iter().enumerate() {
            let e = if positive { e } else { -e };
            if e > 0 {
                factors.push(BigUint::from(p as u64).pow(e as u32));
            }
        }
        product_tree(&factors)
    }

    pub fn numerator(&self) -> BigUint {
        self.side(true)
    }

    pub fn denominator(&self) -> BigUint {
        self.side(false)
    }

    /// Exact value; numerator and denominator are already coprime.
    pub fn to_ratio(&self) -> BigRational {
        BigRational::new_raw(BigInt::from(self.numerator()), BigInt::from(self.denominator()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials_and_binomials() {
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(factorial(10), BigUint::from(3_628_800u32));
        assert_eq!(binomial(10, 3), BigUint::from(120u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
        let f30 = (1..=30u64).fold(BigUint::one(), |acc, k| acc * k);
        assert_eq!(factorial(30), f30);
    }

    #[test]
    fn float_conversion_of_huge_ratios() {
        let big = factorial(300);
        let r = ratio(big.clone() * 3u32, big * 7u32);
        assert!((rational_to_f64(&r) - 3.0 / 7.0).abs() < 1e-15);
        let x = ln_biguint(&factorial(200));
        // ln 200! from the log-gamma free sum
        let expected: f64 = (2..=200).map(|k| (k as f64).ln()).sum();
        assert!((x - expected).abs() < 1e-9);
        assert_eq!(rational_to_f64(&ratio_int(BigUint::from(12345u32))), 12345.0);
    }

    #[test]
    fn factored_ratio_cancels() {
        let sieve = PrimeSieve::new(100);
        let mut r = FactoredRatio::one(&sieve);
        r.mul_ratio(12, 18);
        r.mul_ratio(9, 4);
        assert_eq!(r.to_ratio(), BigRational::new(BigInt::from(3), BigInt::from(2)));
    }
}
