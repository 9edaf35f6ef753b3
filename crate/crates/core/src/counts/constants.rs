//! Geometric mean of run counts and the constant `L(1/4)`.

use std::f64::consts::PI;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;

use super::approx::ApproxReal;
use super::bigmath::{ratio, rational_to_f64};
use super::sequences::catalan;
use crate::error::{Error, Result};

/// Geometric mean of the run counts over all trees of size `n`:
///
/// `prod_{k=2}^{n-1} k^(1 - (n+1-k)/2 * C_k C_{n-k+1} / C_n)`.
///
/// The exponents are exact rationals; the log-sum is evaluated in `f64`, so
/// `precision_bits` above 53 is refused.
pub fn geometric_mean_width(n: usize, precision_bits: u32) -> Result<ApproxReal> {
    if n < 2 {
        return Err(Error::OutOfRange("geometric_mean_width requires n >= 2".into()));
    }
    if precision_bits == 0 || precision_bits > f64::MANTISSA_DIGITS {
        return Err(Error::Precision(format!(
            "{} bits requested, at most {} available",
            precision_bits,
            f64::MANTISSA_DIGITS
        )));
    }
    let cn = catalan(n)?;
    let mut log_sum = 0.0f64;
    let mut magnitude = 0.0f64;
    for k in 2..n {
        let weight = ratio(
            BigUint::from(n + 1 - k) * catalan(k)? * catalan(n - k + 1)?,
            BigUint::from(2u32) * &cn,
        );
        let exponent = rational_to_f64(&(BigRational::one() - weight));
        let term = exponent * (k as f64).ln();
        log_sum += term;
        magnitude += term.abs();
    }
    let value = log_sum.exp();
    // Each term carries a few ulps; the sum adds one rounding per term.
    let log_error = (4.0 + n as f64) * f64::EPSILON * (magnitude + 1.0);
    let requested = value * 2f64.powi(-(precision_bits as i32));
    Ok(ApproxReal::new(value, (value * log_error).max(requested.min(value * log_error))))
}

/// Controls for [`log_constant_l`].
#[derive(Clone, Copy, Debug)]
pub struct LogConstantConfig {
    /// Largest number of directly summed terms.
    pub max_terms: u64,
}

impl Default for LogConstantConfig {
    fn default() -> Self {
        LogConstantConfig { max_terms: 100_000_000 }
    }
}

/// Direct partial sum `sum_{n=2}^{terms} ln(n) C_n 4^-n`, with the error
/// bound of its floating-point evaluation.
pub fn log_constant_partial_sum(terms: u64) -> (f64, f64) {
    let (sum, error, _) = partial_sum_with_next(terms);
    (sum, error)
}

/// Partial sum, its rounding bound, and `C_{terms+1} 4^-(terms+1)`.
fn partial_sum_with_next(terms: u64) -> (f64, f64, f64) {
    // c_n = C_n 4^-n via c_{n+1} / c_n = (2n - 1) / (2n + 2), c_1 = 1/4.
    let mut c = 0.25f64;
    let mut sum = 0.0f64;
    let mut compensation = 0.0f64;
    for n in 2..=terms {
        let m = (n - 1) as f64;
        c *= (2.0 * m - 1.0) / (2.0 * m + 2.0);
        let term = (n as f64).ln() * c - compensation;
        let t = sum + term;
        compensation = (t - sum) - term;
        sum = t;
    }
    let m = terms as f64;
    let next = c * (2.0 * m - 1.0) / (2.0 * m + 2.0);
    // Relative drift of c_n is at most ~4n ulps.
    let drift = (4.0 * terms as f64 + 8.0) * f64::EPSILON;
    (sum, sum * drift, next * (1.0 + drift))
}

/// `int_m^inf ln(x) x^-s dx` for `s > 1`.
fn log_power_tail_integral(m: f64, s: f64) -> f64 {
    let a = s - 1.0;
    m.powf(-a) * (m.ln() / a + 1.0 / (a * a))
}

/// Enclosure of `L(1/4) = sum_{n>1} ln(n) C_n 4^-n` with half-width at most
/// `target_abs_error`.
///
/// The series is summed directly up to `N`; the tail uses
/// `C_n 4^-n = a_n n^(-3/2)` where `a_n` decreases to `1/(4 sqrt(pi))`
/// (so `1/(4 sqrt(pi)) <= a_n <= a_{N+1}` for `n > N`), together with the
/// integral comparison for the decreasing `ln(x) x^(-3/2)`. The point value
/// subtracts the two-term Catalan asymptotic.
pub fn log_constant_l(target_abs_error: f64) -> Result<ApproxReal> {
    log_constant_l_with(target_abs_error, LogConstantConfig::default())
}

pub fn log_constant_l_with(target_abs_error: f64, config: LogConstantConfig) -> Result<ApproxReal> {
    if target_abs_error.is_nan() || target_abs_error <= 0.0 {
        return Err(Error::Precision("target error must be positive".into()));
    }
    let limit_constant = 1.0 / (4.0 * PI.sqrt());
    let mut terms: u64 = 1024;
    loop {
        if terms > config.max_terms {
            return Err(Error::Precision(format!(
                "error {:e} not reachable within {} terms",
                target_abs_error, config.max_terms
            )));
        }
        let (direct, rounding, c_next) = partial_sum_with_next(terms);
        let nf = terms as f64;
        let a_next = c_next * (nf + 1.0).powf(1.5);
        let lo_sum = log_power_tail_integral(nf + 1.0, 1.5);
        let hi_sum = log_power_tail_integral(nf, 1.5);
        let lo = direct + limit_constant * lo_sum - rounding;
        let hi = direct + a_next * hi_sum + rounding;
        let enclosure = ApproxReal::from_bounds(lo, hi);
        if enclosure.error <= target_abs_error {
            // Two-term estimate, clamped into the proven enclosure.
            let mid_tail = limit_constant
                * (0.5 * (lo_sum + hi_sum)
                    + 0.375 * 0.5 * (log_power_tail_integral(nf + 1.0, 2.5) + log_power_tail_integral(nf, 2.5)));
            let point = (direct + mid_tail).clamp(lo, hi);
            let error = (point - lo).max(hi - point);
            return Ok(ApproxReal::new(point, error.max(enclosure.error)));
        }
        terms *= 2;
    }
}
