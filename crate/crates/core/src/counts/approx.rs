use std::fmt;

use serde::Serialize;

/// A floating value with an absolute error bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ApproxReal {
    pub value: f64,
    pub error: f64,
}

impl ApproxReal {
    pub fn new(value: f64, error: f64) -> Self {
        ApproxReal { value, error: error.abs() }
    }

    /// Enclosure `[lo, hi]` represented by its midpoint and half-width.
    pub fn from_bounds(lo: f64, hi: f64) -> Self {
        ApproxReal { value: 0.5 * (lo + hi), error: 0.5 * (hi - lo).abs() }
    }

    pub fn lower(&self) -> f64 {
        self.value - self.error
    }

    pub fn upper(&self) -> f64 {
        self.value + self.error
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower() <= x && x <= self.upper()
    }
}

impl fmt::Display for ApproxReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {:.1e}", self.value, self.error)
    }
}
