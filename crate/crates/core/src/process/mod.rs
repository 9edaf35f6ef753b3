//! Process terms, syntax trees and their interleaving semantics.

pub mod degree;
pub mod enumerate;
pub mod parse;
pub mod semantic;
pub mod suspended;
pub mod tree;

pub use degree::{degree_sequence_of_tree, tree_from_degree_sequence, DegreeSequence};
pub use enumerate::{
    enumerate_trees, enumerate_trees_range, enumerate_trees_with_limit, partition_ranks,
    TreeEnumerator, DEFAULT_ENUMERATION_LIMIT,
};
pub use parse::parse_process;
pub use semantic::{build_semantic_tree, contract, SemanticNode, SemanticTree, DEFAULT_SEMANTIC_BUDGET};
pub use suspended::{suspended_view, RunPrefix, SuspendedView};
pub use tree::{
    annotate_weights, default_label, path_tree, star_tree, tree_to_poset, NodeId, SyntaxTree,
    TreeRecord, WeightedTree, SYNTHETIC_ROOT,
};
