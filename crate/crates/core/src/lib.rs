//! Counting and sampling the interleavings of process trees built from
//! action prefixing and parallel composition.
//!
//! A term such as `a.b.(c || d.(e || f))` is a plane tree of actions; its
//! runs are the linear extensions of the tree order. The crate counts runs
//! and prefixes exactly, builds or sizes the full interleaving tree, and
//! samples runs and trees uniformly.

pub mod counts;
pub mod cuts;
pub mod error;
pub mod process;
pub mod sampling;
pub mod selftest;
pub mod sweep;

pub use error::{Error, Result};
