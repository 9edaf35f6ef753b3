//! Goodness-of-fit helpers for the statistical tests.

use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Pearson statistic of `observed` counts against `probabilities`.
pub fn chi_square_statistic(observed: &[u64], probabilities: &[f64]) -> f64 {
    let total: u64 = observed.iter().sum();
    observed
        .iter()
        .zip(probabilities)
        .map(|(&o, &p)| {
            let e = p * total as f64;
            (o as f64 - e).powi(2) / e
        })
        .sum()
}

/// Two-sample statistic for equal-size samples over the same categories;
/// returns the statistic and its degrees of freedom.
pub fn two_sample_chi_square(a: &[u64], b: &[u64]) -> (f64, usize) {
    let (na, nb) = (a.iter().sum::<u64>() as f64, b.iter().sum::<u64>() as f64);
    let (ka, kb) = ((nb / na).sqrt(), (na / nb).sqrt());
    let mut stat = 0.0;
    let mut cells = 0usize;
    for (&x, &y) in a.iter().zip(b) {
        if x + y == 0 {
            continue;
        }
        cells += 1;
        stat += (ka * x as f64 - kb * y as f64).powi(2) / (x + y) as f64;
    }
    (stat, cells.saturating_sub(1))
}

/// Quantile of the chi-square distribution with `df` degrees of freedom.
pub fn chi_square_quantile(df: usize, p: f64) -> f64 {
    ChiSquared::new(df as f64).expect("df > 0").inverse_cdf(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_quantiles() {
        assert!((chi_square_quantile(7, 0.999) - 24.322).abs() < 1e-2);
        assert!((chi_square_quantile(13, 0.999) - 34.528).abs() < 1e-2);
    }

    #[test]
    fn perfect_fit_is_zero() {
        assert_eq!(chi_square_statistic(&[25, 25, 50], &[0.25, 0.25, 0.5]), 0.0);
        assert_eq!(two_sample_chi_square(&[3, 4], &[3, 4]), (0.0, 1));
    }
}
