//! Flat-array multiset sampler, kept as a differential oracle.

use super::rng::Rng;
use crate::error::{Error, Result};

pub const DEFAULT_ARRAY_LIMIT: u64 = 1 << 24;

/// Each element repeated by its weight, in the given order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaiveSampler {
    flat: Vec<usize>,
}

impl NaiveSampler {
    pub fn build(entries: &[(usize, u64)]) -> Result<Self> {
        Self::build_with_limit(entries, DEFAULT_ARRAY_LIMIT)
    }

    pub fn build_with_limit(entries: &[(usize, u64)], limit: u64) -> Result<Self> {
        let total: u64 = entries.iter().map(|e| e.1).sum();
        if total > limit {
            return Err(Error::ArrayLimit { total, limit });
        }
        let mut flat = Vec::with_capacity(total as usize);
        for &(id, w) in entries {
            flat.extend(std::iter::repeat_n(id, w as usize));
        }
        Ok(NaiveSampler { flat })
    }

    pub fn total(&self) -> u64 {
        self.flat.len() as u64
    }

    pub fn sample(&self, rng: &mut Rng) -> Result<usize> {
        if self.flat.is_empty() {
            return Err(Error::EmptyMultiset);
        }
        Ok(self.flat[(rng.one_to(self.total()) - 1) as usize])
    }
}

pub fn naive_sample(entries: &[(usize, u64)], rng: &mut Rng) -> Result<usize> {
    NaiveSampler::build(entries)?.sample(rng)
}
