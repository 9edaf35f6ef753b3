//! Exact counting: run counts, mean widths and sizes, and constants.

pub mod approx;
pub mod bigmath;
pub mod constants;
pub mod dump;
pub mod nonplane;
pub mod sequences;

pub use approx::ApproxReal;
pub use constants::{
    geometric_mean_width, log_constant_l, log_constant_l_with, log_constant_partial_sum, LogConstantConfig,
};
pub use dump::{rows_to_csv, rows_to_json, sequence_rows, SequenceName, SequenceRow};
pub use nonplane::{
    eta_estimate, nonplane_asymptotic_deviation, nonplane_count, nonplane_counts, nonplane_mean_width,
    nonplane_mean_width_asymptotic_ln, ETA, GAMMA,
};
pub use sequences::{
    asymptotic_size, asymptotic_size_leading_ln, asymptotic_size_ln, catalan, catalan_asymptotic,
    catalan_power_coeff, cumulative_level_width, hook_count, increasing_count, level_bounds_check,
    mean_level_width, mean_size, mean_size_sequence, mean_width, mean_width_stirling, r_sequence,
    tail_level_fraction, SizeMethod,
};
