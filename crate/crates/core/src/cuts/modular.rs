//! Prefix counts modulo word-size primes, recombined by Chinese remaindering.
//!
//! Per prime the recursion runs on exponential generating functions:
//! `b_T = 1 + int prod_children b_c`, so the shuffle product becomes an
//! ordinary convolution and `a_k = k! b_k`.

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;

use crate::process::SyntaxTree;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; these bases are exact below 2^64.
fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Largest primes below 2^62 whose product exceeds `2^bits`.
fn primes_for(bits: u64) -> Vec<u64> {
    let mut primes = Vec::new();
    let mut covered = 0u64;
    let mut candidate = (1u64 << 62) - 1;
    while covered <= bits {
        if is_prime(candidate) {
            primes.push(candidate);
            covered += 61;
        }
        candidate -= 2;
    }
    primes
}

/// `out_k = sum_j f_j g_{k-j} mod p`, reducing the 128-bit accumulator
/// every 15 products.
fn convolve(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let len = f.len() + g.len() - 1;
    let p128 = p as u128;
    (0..len)
        .map(|k| {
            let lo = k.saturating_sub(g.len() - 1);
            let hi = k.min(f.len() - 1);
            let mut acc = 0u128;
            for (n, j) in (lo..=hi).enumerate() {
                acc += f[j] as u128 * g[k - j] as u128;
                if n % 15 == 14 {
                    acc %= p128;
                }
            }
            (acc % p128) as u64
        })
        .collect()
}

/// Prefix counts `a_1..=a_n` modulo `p` (`p > n`).
fn prefix_counts_mod(tree: &SyntaxTree, p: u64) -> Vec<u64> {
    let n = tree.len();
    let mut fact = vec![1u64; n + 1];
    for k in 1..=n {
        fact[k] = mul_mod(fact[k - 1], k as u64, p);
    }
    let mut inv_fact = vec![1u64; n + 1];
    inv_fact[n] = pow_mod(fact[n], p - 2, p);
    for k in (1..=n).rev() {
        inv_fact[k - 1] = mul_mod(inv_fact[k], k as u64, p);
    }
    let inv = |k: usize| mul_mod(inv_fact[k], fact[k - 1], p);

    let mut egf: Vec<Vec<u64>> = vec![Vec::new(); n];
    for v in (0..n).rev() {
        let kids = tree.child_indices(v);
        let leaves = kids.iter().filter(|&&c| tree.child_indices(c).is_empty()).count();
        // (1 + z)^leaves
        let mut forest: Vec<u64> = (0..=leaves)
            .map(|k| mul_mod(fact[leaves], mul_mod(inv_fact[k], inv_fact[leaves - k], p), p))
            .collect();
        let mut inner: Vec<Vec<u64>> = kids
            .iter()
            .filter(|&&c| !tree.child_indices(c).is_empty())
            .map(|&c| std::mem::take(&mut egf[c]))
            .collect();
        inner.sort_by_key(Vec::len);
        for child in &inner {
            forest = convolve(&forest, child, p);
        }
        let mut own = Vec::with_capacity(forest.len() + 1);
        own.push(1);
        own.extend(forest.iter().enumerate().map(|(k, &c)| mul_mod(c, inv(k + 1), p)));
        egf[v] = own;
    }
    let root = std::mem::take(&mut egf[0]);
    (1..=n).map(|k| mul_mod(root[k], fact[k], p)).collect()
}

/// `sum_j x_j y_j mod p`, reducing the 128-bit accumulator every 15 products.
fn dot(x: &[u64], y: &[u64], p: u64) -> u64 {
    let p128 = p as u128;
    let mut acc = 0u128;
    for (n, (&a, &b)) in x.iter().zip(y).enumerate() {
        acc += a as u128 * b as u128;
        if n % 15 == 14 {
            acc %= p128;
        }
    }
    (acc % p128) as u64
}

/// Mixed-radix (Garner) reconstruction over a prefix of a fixed prime list.
struct Garner {
    primes: Vec<u64>,
    /// `radix[i][j] = p_0 ... p_{j-1} mod p_i` for `j < i`.
    radix: Vec<Vec<u64>>,
    /// `(p_0 ... p_{i-1})^-1 mod p_i`.
    radix_inv: Vec<u64>,
}

impl Garner {
    fn new(primes: Vec<u64>) -> Self {
        let mut radix = Vec::with_capacity(primes.len());
        let mut radix_inv = Vec::with_capacity(primes.len());
        for (i, &p) in primes.iter().enumerate() {
            let mut row = Vec::with_capacity(i);
            let mut acc = 1u64;
            for &q in &primes[..i] {
                row.push(acc);
                acc = mul_mod(acc, q % p, p);
            }
            radix.push(row);
            radix_inv.push(pow_mod(acc, p - 2, p));
        }
        Garner { primes, radix, radix_inv }
    }

    /// Value below `p_0 ... p_{k-1}` with the given first `k` residues.
    fn reconstruct(&self, residues: &[u64]) -> BigUint {
        let k = residues.len();
        let mut digits: Vec<u64> = Vec::with_capacity(k);
        for (i, &r) in residues.iter().enumerate() {
            let p = self.primes[i];
            let partial = dot(&digits, &self.radix[i], p);
            digits.push(mul_mod((r + p - partial) % p, self.radix_inv[i], p));
        }
        let mut value = BigUint::zero();
        for i in (0..k).rev() {
            value *= self.primes[i];
            value += digits[i];
        }
        value
    }
}

/// Exact prefix counts `a_1..=a_n`, given that none exceeds `2^max_bits`.
pub(crate) fn prefix_counts(tree: &SyntaxTree, max_bits: u64) -> Vec<BigUint> {
    let n = tree.len();
    // a_k <= (n-1)! / (n-k)!: each step past the root picks one of the
    // remaining actions.
    let mut bounds = Vec::with_capacity(n);
    let mut log2_falling = 0.0f64;
    for k in 1..=n {
        if k > 1 {
            log2_falling += ((n - k + 1) as f64).log2();
        }
        bounds.push((log2_falling.ceil() as u64 + 1).min(max_bits));
    }
    let garner = Garner::new(primes_for(max_bits));
    let residues: Vec<Vec<u64>> =
        garner.primes.par_iter().map(|&p| prefix_counts_mod(tree, p)).collect();
    (0..n)
        .into_par_iter()
        .map(|k| {
            let used = (bounds[k] / 61 + 1) as usize;
            let column: Vec<u64> = residues[..used].iter().map(|r| r[k]).collect();
            garner.reconstruct(&column)
        })
        .collect()
}
