//! Tabulation of the named sequences for export.

use std::f64::consts::{E, PI};
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed};
use serde_json::json;

use super::bigmath::{ln_rational, ratio_int, rational_to_f64};
use super::constants::geometric_mean_width;
use super::nonplane::{nonplane_counts, ETA, GAMMA};
use super::sequences::{
    asymptotic_size_ln, catalan, increasing_count, mean_size_sequence, mean_width, r_sequence, SizeMethod,
};
use crate::cuts::{cut_count_sequence, CutMethod};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SequenceName {
    Catalan,
    Increasing,
    MeanWidth,
    MeanSize,
    MCuts,
    RSeq,
    Nonplane,
    Geomean,
}

impl SequenceName {
    pub const ALL: [SequenceName; 8] = [
        SequenceName::Catalan,
        SequenceName::Increasing,
        SequenceName::MeanWidth,
        SequenceName::MeanSize,
        SequenceName::MCuts,
        SequenceName::RSeq,
        SequenceName::Nonplane,
        SequenceName::Geomean,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SequenceName::Catalan => "catalan",
            SequenceName::Increasing => "increasing",
            SequenceName::MeanWidth => "mean_width",
            SequenceName::MeanSize => "mean_size",
            SequenceName::MCuts => "m_cuts",
            SequenceName::RSeq => "r_seq",
            SequenceName::Nonplane => "nonplane",
            SequenceName::Geomean => "geomean",
        }
    }

    /// First index at which the sequence is defined.
    pub fn first_index(self) -> usize {
        match self {
            SequenceName::MeanSize | SequenceName::MCuts | SequenceName::RSeq => 0,
            SequenceName::Geomean => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for SequenceName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SequenceName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SequenceName::ALL
            .into_iter()
            .find(|name| name.as_str() == s)
            .ok_or_else(|| Error::OutOfRange(format!("unknown sequence `{}`", s)))
    }
}

/// One tabulated value. `asymptotic_ratio` is value / asymptotic form where
/// one is defined.
#[derive(Clone, Debug, PartialEq)]
pub struct SequenceRow {
    pub n: usize,
    pub value: BigRational,
    pub asymptotic_ratio: Option<f64>,
}

impl SequenceRow {
    pub fn approx(&self) -> f64 {
        rational_to_f64(&self.value)
    }
}

fn ratio_from_ln(value: &BigRational, ln_asymptotic: f64) -> Option<f64> {
    if !value.is_positive() {
        return None;
    }
    Some((ln_rational(value) - ln_asymptotic).exp())
}

/// Rows `first_index..=to`. Geometric means are exact rationals of the
/// nearest double.
pub fn sequence_rows(name: SequenceName, to: usize) -> Result<Vec<SequenceRow>> {
    let first = name.first_index();
    let mut rows = Vec::new();
    let row = |n, value: BigRational, ln_asym: Option<f64>| SequenceRow {
        n,
        asymptotic_ratio: ln_asym.and_then(|l| ratio_from_ln(&value, l)),
        value,
    };
    match name {
        SequenceName::Catalan => {
            for n in first..=to {
                let x = n as f64;
                let ln_asym = (x - 1.0) * 4f64.ln() - 0.5 * (PI * x * x * x).ln();
                rows.push(row(n, ratio_int(catalan(n)?), Some(ln_asym)));
            }
        }
        SequenceName::Increasing => {
            for n in first..=to {
                rows.push(row(n, ratio_int(increasing_count(n)?), None));
            }
        }
        SequenceName::MeanWidth => {
            for n in first..=to {
                let x = n as f64;
                let ln_asym = 2f64.ln() + 0.5 * (2.0 * PI * x).ln() + x * (x / (2.0 * E)).ln();
                rows.push(row(n, mean_width(n)?, Some(ln_asym)));
            }
        }
        SequenceName::MeanSize => {
            for (n, s) in mean_size_sequence(to, SizeMethod::Recurrence)?.into_iter().enumerate() {
                rows.push(row(n, s, (n > 0).then(|| asymptotic_size_ln(n))));
            }
        }
        SequenceName::MCuts => {
            for (n, m) in cut_count_sequence(to, CutMethod::Recurrence)?.into_iter().enumerate() {
                rows.push(row(n, ratio_int(m), None));
            }
        }
        SequenceName::RSeq => {
            for (n, r) in r_sequence(to)?.into_iter().enumerate() {
                rows.push(row(n, r, (n > 0).then_some(1.0)));
            }
        }
        SequenceName::Nonplane => {
            if to >= 1 {
                for (k, t) in nonplane_counts(to)?.into_iter().enumerate() {
                    let x = (k + 1) as f64;
                    let ln_asym = (GAMMA / (2.0 * PI.sqrt())).ln() - x * ETA.ln() - 1.5 * x.ln();
                    rows.push(row(k + 1, ratio_int(t), Some(ln_asym)));
                }
            }
        }
        SequenceName::Geomean => {
            for n in first..=to {
                let g = geometric_mean_width(n, 53)?;
                let value = BigRational::from_f64(g.value).expect("finite");
                rows.push(row(n, value, None));
            }
        }
    }
    Ok(rows)
}

pub fn rows_to_csv(rows: &[SequenceRow]) -> String {
    let mut out = String::from("n,value_numerator,value_denominator,approx,asymptotic_ratio\n");
    for r in rows {
        let asym = r.asymptotic_ratio.map(|x| format!("{:.12}", x)).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{:e},{}\n",
            r.n,
            r.value.numer(),
            r.value.denom(),
            r.approx(),
            asym
        ));
    }
    out
}

pub fn rows_to_json(name: SequenceName, rows: &[SequenceRow]) -> serde_json::Value {
    let values: Vec<_> = rows
        .iter()
        .map(|r| {
            json!({
                "n": r.n,
                "value_numerator": r.value.numer().to_string(),
                "value_denominator": r.value.denom().to_string(),
                "approx": r.approx(),
                "asymptotic_ratio": r.asymptotic_ratio,
            })
        })
        .collect();
    json!({ "sequence": name.as_str(), "rows": values })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for name in SequenceName::ALL {
            assert_eq!(name.as_str().parse::<SequenceName>().unwrap(), name);
        }
        assert!("fibonacci".parse::<SequenceName>().is_err());
    }

    #[test]
    fn mean_size_head() {
        let rows = sequence_rows(SequenceName::MeanSize, 2).unwrap();
        let values: Vec<String> = rows.iter().map(|r| r.value.to_string()).collect();
        assert_eq!(values, ["0", "1", "2"]);
        let csv = rows_to_csv(&rows);
        assert!(csv.starts_with("n,value_numerator,value_denominator"));
        assert!(csv.contains("\n2,2,1,"));
    }

    #[test]
    fn every_sequence_tabulates() {
        for name in SequenceName::ALL {
            let rows = sequence_rows(name, 8).unwrap();
            assert_eq!(rows.first().unwrap().n, name.first_index());
            assert_eq!(rows.last().unwrap().n, 8);
            let json = rows_to_json(name, &rows);
            assert_eq!(json["rows"].as_array().unwrap().len(), rows.len());
        }
    }

    #[test]
    fn asymptotic_ratios_approach_one() {
        let rows = sequence_rows(SequenceName::Catalan, 200).unwrap();
        assert!((rows.last().unwrap().asymptotic_ratio.unwrap() - 1.0).abs() < 3e-3);
        let rows = sequence_rows(SequenceName::MeanSize, 40).unwrap();
        assert!((rows.last().unwrap().asymptotic_ratio.unwrap() - 1.0).abs() < 1e-4);
    }
}
