//! Plane rooted syntax trees with preorder node identity.

use std::fmt;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Label of the synthetic root added when a bare parallel composition is
/// parsed in forest mode. The parser never accepts it from user input.
pub const SYNTHETIC_ROOT: &str = "#root";

/// A node reference: its 1-based position in the prefix traversal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub usize);

impl NodeId {
    pub const ROOT: NodeId = NodeId(1);

    pub fn from_index(index: usize) -> Self {
        NodeId(index + 1)
    }

    /// 0-based arena index.
    pub fn index(self) -> usize {
        self.0 - 1
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Nested `{"label": ..., "children": [...]}` record used for import/export.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeRecord {
    pub label: String,
    #[serde(default)]
    pub children: Vec<TreeRecord>,
}

impl TreeRecord {
    pub fn leaf(label: impl Into<String>) -> Self {
        TreeRecord { label: label.into(), children: Vec::new() }
    }

    pub fn node(label: impl Into<String>, children: Vec<TreeRecord>) -> Self {
        TreeRecord { label: label.into(), children }
    }
}

/// Plane rooted tree of labelled actions.
///
/// Nodes are stored in prefix-traversal order, so the subtree of any node
/// occupies a contiguous index range starting at that node.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SyntaxTree {
    labels: Vec<String>,
    parents: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    sizes: Vec<usize>,
}

impl SyntaxTree {
    /// Builds a tree from nodes listed in prefix order, each with the index
    /// of its parent (`None` only for the first node).
    pub fn from_preorder(labels: Vec<String>, parents: Vec<Option<usize>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 || parents.len() != n {
            return Err(Error::Record("node and parent lists must be non-empty and aligned".into()));
        }
        if parents[0].is_some() {
            return Err(Error::Record("the first node must be the root".into()));
        }
        let mut children = vec![Vec::new(); n];
        // Open path of ancestors: a preorder parent must lie on it.
        let mut path: Vec<usize> = vec![0];
        for (v, parent) in parents.iter().enumerate().skip(1) {
            let p = parent.ok_or_else(|| Error::Record(format!("node {} has no parent", v + 1)))?;
            while let Some(&top) = path.last() {
                if top == p {
                    break;
                }
                path.pop();
            }
            if path.is_empty() {
                return Err(Error::Record(format!("node {} is not listed in prefix order", v + 1)));
            }
            children[p].push(v);
            path.push(v);
        }
        let mut sizes = vec![1usize; n];
        for v in (1..n).rev() {
            let p = parents[v].expect("checked above");
            sizes[p] += sizes[v];
        }
        Ok(SyntaxTree { labels, parents, children, sizes })
    }

    pub fn from_record(record: &TreeRecord) -> Result<Self> {
        let mut labels = Vec::new();
        let mut parents = Vec::new();
        let mut stack: Vec<(&TreeRecord, Option<usize>)> = vec![(record, None)];
        while let Some((node, parent)) = stack.pop() {
            if node.label.is_empty() {
                return Err(Error::Record("empty label".into()));
            }
            let idx = labels.len();
            labels.push(node.label.clone());
            parents.push(parent);
            for child in node.children.iter().rev() {
                stack.push((child, Some(idx)));
            }
        }
        Self::from_preorder(labels, parents)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let record: TreeRecord =
            serde_json::from_str(text).map_err(|e| Error::Record(e.to_string()))?;
        Self::from_record(&record)
    }

    /// Builds an unlabelled shape from prefix-order degrees; nodes get
    /// generated labels (see [`default_label`]).
    pub fn from_degrees(degrees: &[usize]) -> Result<Self> {
        let n = degrees.len();
        if n == 0 {
            return Err(Error::Record("empty degree word".into()));
        }
        let mut parents = Vec::with_capacity(n);
        // (node, remaining child slots)
        let mut open: Vec<(usize, usize)> = Vec::new();
        for (v, &d) in degrees.iter().enumerate() {
            if v == 0 {
                parents.push(None);
            } else {
                let Some(top) = open.last_mut() else {
                    return Err(Error::Record(format!("degree word closes early at position {}", v)));
                };
                parents.push(Some(top.0));
                top.1 -= 1;
                if top.1 == 0 {
                    open.pop();
                }
            }
            if d > 0 {
                open.push((v, d));
            }
        }
        if !open.is_empty() {
            return Err(Error::Record("degree word leaves unfilled child slots".into()));
        }
        let labels = (0..n).map(default_label).collect();
        Self::from_preorder(labels, parents)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn root(&self) -> NodeId {
        NodeId::ROOT
    }

    pub fn ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.len()).map(NodeId::from_index)
    }

    pub fn label(&self, id: NodeId) -> &str {
        &self.labels[id.index()]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn parent(&self, id: NodeId) -> Option<NodeId> {
        self.parents[id.index()].map(NodeId::from_index)
    }

    pub fn children(&self, id: NodeId) -> impl ExactSizeIterator<Item = NodeId> + '_ {
        self.children[id.index()].iter().map(|&c| NodeId::from_index(c))
    }

    pub(crate) fn child_indices(&self, index: usize) -> &[usize] {
        &self.children[index]
    }

    pub(crate) fn parent_index(&self, index: usize) -> Option<usize> {
        self.parents[index]
    }

    pub fn degree(&self, id: NodeId) -> usize {
        self.children[id.index()].len()
    }

    /// Number of nodes in the subtree rooted at `id`.
    pub fn subtree_size(&self, id: NodeId) -> usize {
        self.sizes[id.index()]
    }

    pub(crate) fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Node degrees in prefix-traversal order (the Łukasiewicz degree word).
    pub fn degrees(&self) -> Vec<usize> {
        self.children.iter().map(Vec::len).collect()
    }

    pub fn is_leaf(&self, id: NodeId) -> bool {
        self.children[id.index()].is_empty()
    }

    pub fn height(&self) -> usize {
        let mut depth = vec![0usize; self.len()];
        for v in 1..self.len() {
            depth[v] = depth[self.parents[v].unwrap()] + 1;
        }
        depth.into_iter().max().unwrap_or(0)
    }

    /// Looks a node up by `label` or `label#id`. A bare label must be unique.
    pub fn resolve(&self, action: &str) -> Result<NodeId> {
        if let Some((label, id)) = action.rsplit_once('#') {
            if !label.is_empty() {
                let id: usize =
                    id.parse().map_err(|_| Error::UnknownAction(action.to_string()))?;
                if id >= 1 && id <= self.len() && self.labels[id - 1] == label {
                    return Ok(NodeId(id));
                }
                return Err(Error::UnknownAction(action.to_string()));
            }
        }
        let matches: Vec<NodeId> = self.ids().filter(|&v| self.label(v) == action).collect();
        match matches.len() {
            0 => Err(Error::UnknownAction(action.to_string())),
            1 => Ok(matches[0]),
            _ => Err(Error::AmbiguousLabel {
                label: action.to_string(),
                candidates: matches
                    .iter()
                    .map(|v| format!("{}#{}", action, v))
                    .collect::<Vec<_>>()
                    .join(", "),
            }),
        }
    }

    /// `label#preorder_id`, the unambiguous action spelling.
    pub fn action_name(&self, id: NodeId) -> String {
        format!("{}#{}", self.label(id), id)
    }

    /// Term in the input grammar; `parse_process` reads it back (in forest
    /// mode when the root is synthetic).
    pub fn to_term(&self) -> String {
        let mut out = String::new();
        if self.labels[0] == SYNTHETIC_ROOT && !self.children[0].is_empty() {
            self.write_parallel(&self.children[0], &mut out);
        } else {
            self.write_term(0, &mut out);
        }
        out
    }

    fn write_parallel(&self, nodes: &[usize], out: &mut String) {
        for (k, &c) in nodes.iter().enumerate() {
            if k > 0 {
                out.push_str(" || ");
            }
            self.write_term(c, out);
        }
    }

    fn write_term(&self, v: usize, out: &mut String) {
        out.push_str(&self.labels[v]);
        match self.children[v].as_slice() {
            [] => {}
            [only] => {
                out.push('.');
                self.write_term(*only, out);
            }
            many => {
                out.push_str(".(");
                self.write_parallel(many, out);
                out.push(')');
            }
        }
    }

    /// Label-free structural form, e.g. `(()(()()))`. This is the canonical
    /// key for shape comparison.
    pub fn structure(&self) -> String {
        let mut out = String::with_capacity(2 * self.len());
        // Closing parentheses are emitted when leaving a subtree; with the
        // contiguous-subtree layout each node's range end is index + size.
        let mut closes: Vec<usize> = Vec::new();
        for v in 0..self.len() {
            while closes.last() == Some(&v) {
                closes.pop();
                out.push(')');
            }
            out.push('(');
            closes.push(v + self.sizes[v]);
        }
        for _ in closes {
            out.push(')');
        }
        out
    }

    pub fn to_record(&self) -> TreeRecord {
        fn build(t: &SyntaxTree, v: usize) -> TreeRecord {
            TreeRecord {
                label: t.labels[v].clone(),
                children: t.children[v].iter().map(|&c| build(t, c)).collect(),
            }
        }
        build(self, 0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_record()).expect("tree records always serialize")
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph syntax {\n");
        for v in 0..self.len() {
            let _ = writeln!(out, "  n{} [label=\"{}\"];", v + 1, escape_dot(&self.labels[v]));
        }
        for v in 0..self.len() {
            for &c in &self.children[v] {
                let _ = writeln!(out, "  n{} -> n{};", v + 1, c + 1);
            }
        }
        out.push_str("}\n");
        out
    }

    /// Same shape with generated labels.
    pub fn relabelled(&self) -> SyntaxTree {
        SyntaxTree {
            labels: (0..self.len()).map(default_label).collect(),
            ..self.clone()
        }
    }
}

impl fmt::Display for SyntaxTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_term())
    }
}

pub(crate) fn escape_dot(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Generated action name for the node at 0-based preorder `index`:
/// `a`..`z`, then `a26`, `a27`, ...
pub fn default_label(index: usize) -> String {
    if index < 26 {
        ((b'a' + index as u8) as char).to_string()
    } else {
        format!("a{}", index)
    }
}

/// Tree annotated with subtree sizes (hook weights).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedTree {
    tree: SyntaxTree,
}

impl WeightedTree {
    pub fn tree(&self) -> &SyntaxTree {
        &self.tree
    }

    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tree.is_empty()
    }

    /// `|T(v)|`.
    pub fn weight(&self, id: NodeId) -> usize {
        self.tree.subtree_size(id)
    }

    /// Weights in prefix order.
    pub fn weights(&self) -> &[usize] {
        self.tree.sizes()
    }
}

/// Attaches subtree-size weights. The sizes are computed in one reverse
/// preorder pass when the tree is built, so this is a move.
pub fn annotate_weights(tree: SyntaxTree) -> WeightedTree {
    WeightedTree { tree }
}

impl From<SyntaxTree> for WeightedTree {
    fn from(tree: SyntaxTree) -> Self {
        annotate_weights(tree)
    }
}

/// Covering relation of the tree-poset: one `(parent, child)` pair per edge,
/// in prefix order of the child.
pub fn tree_to_poset(tree: &SyntaxTree) -> Vec<(NodeId, NodeId)> {
    (1..tree.len())
        .map(|v| (NodeId::from_index(tree.parents[v].unwrap()), NodeId::from_index(v)))
        .collect()
}

/// Path `n1.n2.....nk`.
pub fn path_tree(n: usize) -> SyntaxTree {
    SyntaxTree::from_degrees(&path_degrees(n)).expect("path degree word is valid")
}

/// Root with `n - 1` leaf children.
pub fn star_tree(n: usize) -> SyntaxTree {
    let mut degrees = vec![0; n];
    degrees[0] = n - 1;
    SyntaxTree::from_degrees(&degrees).expect("star degree word is valid")
}

fn path_degrees(n: usize) -> Vec<usize> {
    let mut d = vec![1; n];
    d[n - 1] = 0;
    d
}
