//! Finite ordered trees: depth, n-Strahler numbers, order-preserving
//! embeddings and finite universal trees.

mod embed;
mod enumerate;
mod universal;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use embed::{embed, embeds, Embedding};
pub use enumerate::enumerate_trees;
pub use universal::{first_non_embeddable, is_universal_for, universal_tree};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("universal tree U({n},{k},{d}) is undefined")]
    Undefined { n: u32, k: u32, d: u32 },
    #[error("bracket syntax error at byte {0}")]
    Parse(usize),
}

/// A finite ordered tree; the empty child list is the leaf `⟨⟩`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrderedTree {
    pub children: Vec<OrderedTree>,
}

impl OrderedTree {
    pub fn leaf() -> Self {
        OrderedTree::default()
    }

    pub fn node(children: Vec<OrderedTree>) -> Self {
        OrderedTree { children }
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Leaf has depth 1.
    pub fn depth(&self) -> u32 {
        1 + self.children.iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn max_branching(&self) -> usize {
        self.children
            .iter()
            .map(|c| c.max_branching())
            .max()
            .unwrap_or(0)
            .max(self.children.len())
    }

    /// The n-Strahler number: 1 at a leaf; otherwise the maximum `m` over
    /// the children, plus one if at least `n + 1` children attain `m`.
    pub fn n_strahler(&self, n: u32) -> u32 {
        if self.is_leaf() {
            return 1;
        }
        let values: Vec<u32> = self.children.iter().map(|c| c.n_strahler(n)).collect();
        let m = *values.iter().max().expect("non-leaf");
        let count = values.iter().filter(|&&v| v == m).count();
        if count > n as usize {
            m + 1
        } else {
            m
        }
    }

    /// Complete `arity`-ary tree with `height` levels (a leaf for 1).
    pub fn complete(arity: usize, height: u32) -> Self {
        if height <= 1 {
            return OrderedTree::leaf();
        }
        OrderedTree::node(vec![OrderedTree::complete(arity, height - 1); arity])
    }

    pub fn to_brackets(&self) -> String {
        self.to_string()
    }
}

pub fn depth(t: &OrderedTree) -> u32 {
    t.depth()
}

pub fn n_strahler(t: &OrderedTree, n: u32) -> u32 {
    t.n_strahler(n)
}

impl fmt::Display for OrderedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for c in &self.children {
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for OrderedTree {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes: Vec<(usize, u8)> = s
            .bytes()
            .enumerate()
            .filter(|(_, b)| !b.is_ascii_whitespace())
            .collect();
        let mut stack: Vec<Vec<OrderedTree>> = Vec::new();
        let mut done: Option<OrderedTree> = None;
        for &(pos, b) in &bytes {
            if done.is_some() {
                return Err(TreeError::Parse(pos));
            }
            match b {
                b'(' => stack.push(Vec::new()),
                b')' => {
                    let children = stack.pop().ok_or(TreeError::Parse(pos))?;
                    let t = OrderedTree::node(children);
                    match stack.last_mut() {
                        Some(parent) => parent.push(t),
                        None => done = Some(t),
                    }
                }
                _ => return Err(TreeError::Parse(pos)),
            }
        }
        done.ok_or(TreeError::Parse(s.len()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> OrderedTree {
        s.parse().unwrap()
    }

    /// Depth-4 tree whose 3-Strahler number is 3: the root has four
    /// children of 3-Strahler number 2, each with four leaves.
    pub(crate) fn figure_tree() -> OrderedTree {
        let two = t("(()()()())");
        let deep = OrderedTree::node(vec![two.clone(), t("()")]);
        OrderedTree::node(vec![deep, two.clone(), two.clone(), two])
    }

    #[test]
    fn depths() {
        assert_eq!(t("()").depth(), 1);
        assert_eq!(t("(())").depth(), 2);
        assert_eq!(figure_tree().depth(), 4);
    }

    #[test]
    fn strahler_basics() {
        assert_eq!(t("()").n_strahler(1), 1);
        assert_eq!(figure_tree().n_strahler(3), 3);
        for h in 1..6 {
            assert_eq!(OrderedTree::complete(2, h).n_strahler(1), h);
        }
        assert_eq!(t("(()())").n_strahler(2), 1);
    }

    #[test]
    fn brackets_round_trip() {
        for s in ["()", "(())", "(()(()))", "((()())())"] {
            assert_eq!(t(s).to_string(), s);
        }
        assert!("(()".parse::<OrderedTree>().is_err());
        assert!("()()".parse::<OrderedTree>().is_err());
        assert!("".parse::<OrderedTree>().is_err());
        assert!("(x)".parse::<OrderedTree>().is_err());
    }
}
