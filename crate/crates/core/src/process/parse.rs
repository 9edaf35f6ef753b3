//! Recursive-descent parser for pure-merge process terms.
//!
//! ```text
//! process   := prefixed
//! prefixed  := action [ "." tail ]
//! tail      := prefixed | "(" parallel ")"
//! parallel  := prefixed { "||" prefixed }
//! action    := [A-Za-z_][A-Za-z0-9_]*
//! ```
//!
//! Whitespace is insignificant. In forest mode a bare top-level `parallel`
//! is accepted and hung under a synthetic `#root` node.

use crate::error::{Error, Result};
use crate::process::tree::{SyntaxTree, SYNTHETIC_ROOT};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    labels: Vec<String>,
    parents: Vec<Option<usize>>,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn action(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() || *c == b'_' => self.pos += 1,
            Some(_) => return self.error("expected an action name"),
            None => return self.error("unexpected end of input, expected an action name"),
        }
        while matches!(self.src.get(self.pos), Some(c) if c.is_ascii_alphanumeric() || *c == b'_') {
            self.pos += 1;
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn push(&mut self, label: String, parent: Option<usize>) -> usize {
        self.labels.push(label);
        self.parents.push(parent);
        self.labels.len() - 1
    }

    /// Parses a prefixed process under `parent`. Prefix chains `a.b.c` are
    /// consumed iteratively so long sequential processes do not recurse.
    fn prefixed(&mut self, parent: Option<usize>) -> Result<()> {
        let mut parent = parent;
        loop {
            let label = self.action()?;
            let node = self.push(label, parent);
            if !self.eat(".") {
                return Ok(());
            }
            if self.eat("(") {
                self.parallel(Some(node))?;
                if !self.eat(")") {
                    return self.error("expected `)` or `||`");
                }
                return Ok(());
            }
            parent = Some(node);
        }
    }

    fn parallel(&mut self, parent: Option<usize>) -> Result<usize> {
        let mut count = 1;
        self.prefixed(parent)?;
        while self.eat("||") {
            self.prefixed(parent)?;
            count += 1;
        }
        Ok(count)
    }
}

/// Parses `text` into a syntax tree.
pub fn parse_process(text: &str, allow_forest: bool) -> Result<SyntaxTree> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, labels: Vec::new(), parents: Vec::new() };
    if p.peek().is_none() {
        return Err(Error::EmptyInput);
    }
    if allow_forest {
        let root = p.push(SYNTHETIC_ROOT.to_string(), None);
        let count = p.parallel(Some(root))?;
        if count == 1 {
            // A single prefixed process needs no synthetic root.
            p.labels.remove(0);
            p.parents.remove(0);
            for parent in p.parents.iter_mut() {
                *parent = match *parent {
                    Some(0) | None => None,
                    Some(k) => Some(k - 1),
                };
            }
        }
    } else {
        p.prefixed(None)?;
        if p.peek().is_some() && p.src[p.pos..].starts_with(b"||") {
            return Err(Error::TopLevelParallel);
        }
    }
    if let Some(c) = p.peek() {
        return p.error(format!("unexpected `{}`", c as char));
    }
    SyntaxTree::from_preorder(p.labels, p.parents)
}
