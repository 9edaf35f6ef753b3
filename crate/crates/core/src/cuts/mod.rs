//! Admissible cuts, level profiles and related cut-count sequences.

pub mod admissible;
pub mod limit;
mod modular;
pub mod profile;
pub mod sequence;

pub use admissible::{
    compare_cuts, cut_count, cut_size_counts, enumerate_admissible_cuts,
    enumerate_admissible_cuts_with_limit, AdmissibleCut, DEFAULT_CUT_LIMIT,
};
pub use limit::{limit_profile, LIMIT_PROFILE_K};
pub use profile::{level_profile, oracle_profile, semantic_size, LevelProfile, ProfileMethod, FAST_PROFILE_LIMIT};
pub use sequence::{cut_count_sequence, CutMethod, BRUTE_CUT_LIMIT};
