use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("empty input")]
    EmptyInput,
    #[error("top-level parallel composition requires forest mode")]
    TopLevelParallel,
    #[error("child index {index} out of range (root has {degree} children)")]
    ChildIndex { index: usize, degree: usize },
    #[error("cannot contract a single leaf")]
    LeafContraction,
    #[error("semantic tree has {predicted} nodes, exceeding the budget of {budget}")]
    BudgetExceeded { predicted: BigUint, budget: u64 },
    #[error("invalid degree sequence at index {index}: {reason}")]
    InvalidDegreeSequence { index: usize, reason: String },
    #[error("size {n} exceeds the oracle limit {limit}")]
    OracleLimit { n: usize, limit: usize },
    #[error("invalid run prefix at position {index}: {reason}")]
    InvalidPrefix { index: usize, reason: String },
    #[error("unknown action `{0}`")]
    UnknownAction(String),
    #[error("ambiguous action label `{label}` (candidates: {candidates})")]
    AmbiguousLabel { label: String, candidates: String },
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("duplicate element id {0}")]
    DuplicateId(usize),
    #[error("unknown element id {0}")]
    UnknownId(usize),
    #[error("cannot sample from an empty multiset")]
    EmptyMultiset,
    #[error("total weight {total} exceeds the flat array limit {limit}")]
    ArrayLimit { total: u64, limit: u64 },
    #[error("leading coefficient vanishes at n = {0}")]
    SingularRecurrence(usize),
    #[error("recurrence produced a non-integral term at n = {0}")]
    NonIntegralTerm(usize),
    #[error("target precision unreachable: {0}")]
    Precision(String),
    #[error("malformed tree record: {0}")]
    Record(String),
}

pub type Result<T> = std::result::Result<T, Error>;
