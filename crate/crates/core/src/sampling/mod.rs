//! Weighted multisets, run probabilities and uniform random generation.

pub mod naive;
pub mod prefix;
pub mod pst;
pub mod random_tree;
pub mod rng;
pub mod runs;
pub mod stats;

pub use naive::{naive_sample, NaiveSampler, DEFAULT_ARRAY_LIMIT};
pub use prefix::{count_runs_via_probability, prefix_probability, prefix_probability_counted, PrefixProbability};
pub use pst::{PartialSumTree, PstNode};
pub use random_tree::uniform_random_tree;
pub use rng::{Rng, ALGORITHM};
pub use runs::{run_frequencies, sample_run, sample_run_traced, sample_runs, Run, RunStep, RUN_CHUNK};
pub use stats::{chi_square_quantile, chi_square_statistic, two_sample_chi_square};
