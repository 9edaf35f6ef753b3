//! Second-order approximation of the logarithmic mean level width.

use crate::counts::ApproxReal;
use crate::error::{Error, Result};

/// Residual constant: `|f(c, n) - ln W^{cn}_n| <= K / (c (1 - c) n)` for
/// integral `cn`. Measured supremum over `2 <= cn <= n - 2`, `n <= 3000`
/// is 0.0830.
pub const LIMIT_PROFILE_K: f64 = 0.1;

/// `f(c, n)`, approximating `ln` of the mean width at height `cn` above the
/// leaves, with error `K / (c (1 - c) n)`.
pub fn limit_profile(c: f64, n: usize) -> Result<ApproxReal> {
    let nf = n as f64;
    if n < 4 || !(c >= 2.0 / nf && c <= 1.0 - 2.0 / nf) {
        return Err(Error::OutOfRange(format!("c = {} outside [2/n, 1 - 2/n] for n = {}", c, n)));
    }
    let d = 1.0 - c;
    let shape = c - 1.0 + d * (2.0 * d).ln() - c * c.ln() - (2.0 - c) * (2.0 - c).ln();
    let value = d * nf * nf.ln() + shape * nf + 0.5 * ((4.0 - 2.0 * c) / c).ln();
    Ok(ApproxReal::new(value, LIMIT_PROFILE_K / (c * d * nf)))
}
