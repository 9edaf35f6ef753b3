//! Run prefixes and the suspended view they leave behind.

use crate::error::{Error, Result};
use crate::process::tree::{NodeId, SyntaxTree, WeightedTree};

/// An initial segment of a run: the root first, then each action enabled
/// by an earlier one, no repeats.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RunPrefix {
    actions: Vec<NodeId>,
}

impl RunPrefix {
    /// Validates `actions` against `tree`.
    pub fn new(tree: &SyntaxTree, actions: Vec<NodeId>) -> Result<Self> {
        let invalid = |index: usize, reason: String| Error::InvalidPrefix { index, reason };
        if actions.is_empty() {
            return Err(invalid(0, "empty prefix".into()));
        }
        if actions.len() > tree.len() {
            return Err(invalid(tree.len() + 1, "prefix longer than the tree".into()));
        }
        let mut done = vec![false; tree.len()];
        for (k, &a) in actions.iter().enumerate() {
            if a.0 == 0 || a.0 > tree.len() {
                return Err(invalid(k + 1, format!("no node with id {}", a.0)));
            }
            if done[a.index()] {
                return Err(invalid(k + 1, format!("{} already executed", tree.action_name(a))));
            }
            let enabled = match tree.parent(a) {
                None => k == 0,
                Some(p) => done[p.index()],
            };
            if !enabled {
                return Err(invalid(k + 1, format!("{} is not enabled", tree.action_name(a))));
            }
            done[a.index()] = true;
        }
        Ok(RunPrefix { actions })
    }

    /// Resolves `label` / `label#id` names and validates.
    pub fn from_names<S: AsRef<str>>(tree: &SyntaxTree, names: &[S]) -> Result<Self> {
        let actions = names
            .iter()
            .map(|s| tree.resolve(s.as_ref().trim()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(tree, actions)
    }

    /// The run that executes nodes in prefix order.
    pub fn prefix_order(tree: &SyntaxTree) -> Self {
        RunPrefix { actions: tree.ids().collect() }
    }

    pub(crate) fn new_unchecked(actions: Vec<NodeId>) -> Self {
        RunPrefix { actions }
    }

    pub fn actions(&self) -> &[NodeId] {
        &self.actions
    }

    pub fn len(&self) -> usize {
        self.actions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actions.is_empty()
    }

    pub fn is_complete(&self, tree: &SyntaxTree) -> bool {
        self.actions.len() == tree.len()
    }

    /// `label#id` tokens separated by spaces.
    pub fn display(&self, tree: &SyntaxTree) -> String {
        self.actions.iter().map(|&a| tree.action_name(a)).collect::<Vec<_>>().join(" ")
    }
}

/// The residual process after a run prefix: the last executed action and
/// the actions now enabled, in prefix order of the source tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuspendedView<'a> {
    pub source: &'a WeightedTree,
    pub prefix: RunPrefix,
    pub frontier: Vec<NodeId>,
}

impl SuspendedView<'_> {
    /// Root of the suspended tree.
    pub fn current(&self) -> NodeId {
        *self.prefix.actions().last().expect("prefixes are non-empty")
    }

    /// Total weight of the enabled actions; equals `|T| - p`.
    pub fn frontier_weight(&self) -> usize {
        self.frontier.iter().map(|&v| self.source.weight(v)).sum()
    }
}

pub fn suspended_view<'a>(tree: &'a WeightedTree, prefix: &RunPrefix) -> Result<SuspendedView<'a>> {
    let t = tree.tree();
    let checked = RunPrefix::new(t, prefix.actions().to_vec())?;
    let mut done = vec![false; t.len()];
    for &a in checked.actions() {
        done[a.index()] = true;
    }
    let frontier = t
        .ids()
        .filter(|&v| !done[v.index()] && t.parent(v).is_some_and(|p| done[p.index()]))
        .collect();
    Ok(SuspendedView { source: tree, prefix: checked, frontier })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::parse::parse_process;
    use crate::process::tree::annotate_weights;

    fn fig() -> WeightedTree {
        annotate_weights(parse_process("a.b.(c || d.(e || f))", false).unwrap())
    }

    #[test]
    fn example_view() {
        let w = fig();
        let p = RunPrefix::from_names(w.tree(), &["a", "b", "d"]).unwrap();
        let view = suspended_view(&w, &p).unwrap();
        let labels: Vec<&str> = view.frontier.iter().map(|&v| w.tree().label(v)).collect();
        assert_eq!(labels, ["c", "e", "f"]);
        assert_eq!(w.tree().label(view.current()), "d");
        assert_eq!(view.frontier_weight(), 3);
    }

    #[test]
    fn root_and_full_views() {
        let w = fig();
        let root = suspended_view(&w, &RunPrefix::from_names(w.tree(), &["a"]).unwrap()).unwrap();
        assert_eq!(root.frontier, vec![NodeId(2)]);
        let full = suspended_view(&w, &RunPrefix::prefix_order(w.tree())).unwrap();
        assert!(full.frontier.is_empty());
    }

    #[test]
    fn invalid_prefixes_report_position() {
        let w = fig();
        let t = w.tree();
        let pos = |names: &[&str]| match RunPrefix::from_names(t, names) {
            Err(Error::InvalidPrefix { index, .. }) => index,
            other => panic!("expected invalid prefix, got {:?}", other),
        };
        assert_eq!(pos(&["b"]), 1);
        assert_eq!(pos(&["a", "c"]), 2);
        assert_eq!(pos(&["a", "b", "b"]), 3);
        assert_eq!(pos(&["a", "b", "c", "e"]), 4);
        assert!(RunPrefix::new(t, vec![NodeId(1), NodeId(9)]).is_err());
        assert!(RunPrefix::new(t, vec![]).is_err());
    }
}
