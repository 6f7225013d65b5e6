use serde::{Deserialize, Serialize};

use super::OrderedTree;

/// An order-preserving embedding: child `k` of the embedded tree goes to
/// host child `children[k].0`, recursively via `children[k].1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub children: Vec<(usize, Embedding)>,
}

impl Embedding {
    /// Host child-index path for every node of the embedded tree, in
    /// preorder; the root maps to the empty path.
    pub fn paths(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for (img, sub) in &self.children {
            for mut p in sub.paths() {
                p.insert(0, *img);
                out.push(p);
            }
        }
        out
    }

    /// Checks that this is a genuine embedding of `t` into `host`.
    pub fn is_valid(&self, t: &OrderedTree, host: &OrderedTree) -> bool {
        if self.children.len() != t.children.len() {
            return false;
        }
        let increasing = self.children.windows(2).all(|w| w[0].0 < w[1].0);
        increasing
            && self
                .children
                .iter()
                .zip(&t.children)
                .all(|((img, sub), c)| host.children.get(*img).is_some_and(|h| sub.is_valid(c, h)))
    }
}

/// Finds an embedding of `t` into `host`, mapping root to root.
///
/// Children are matched greedily, each to the leftmost host child after the
/// previous image that accommodates it. Whether a given child fits a given
/// host child does not depend on the other choices, so any embedding can be
/// shifted left child by child onto the greedy one.
pub fn embed(t: &OrderedTree, host: &OrderedTree) -> Option<Embedding> {
    if t.depth() > host.depth() || t.children.len() > host.children.len() {
        return None;
    }
    let mut children = Vec::with_capacity(t.children.len());
    let mut next = 0;
    for c in &t.children {
        let (img, sub) = (next..host.children.len())
            .find_map(|k| embed(c, &host.children[k]).map(|e| (k, e)))?;
        children.push((img, sub));
        next = img + 1;
    }
    Some(Embedding { children })
}

pub fn embeds(t: &OrderedTree, host: &OrderedTree) -> bool {
    embed(t, host).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> OrderedTree {
        s.parse().unwrap()
    }

    #[test]
    fn identity() {
        let x = t("((())()(()()))");
        let e = embed(&x, &x).unwrap();
        assert!(e.is_valid(&x, &x));
        assert_eq!(e.paths().len(), x.size());
        assert!(e.children.iter().enumerate().all(|(k, (img, _))| k == *img));
    }

    #[test]
    fn too_few_children() {
        assert!(embed(&t("(()())"), &t("(())")).is_none());
        assert!(embed(&t("(())"), &t("()")).is_none());
    }

    #[test]
    fn greedy_skips_unsuitable_children() {
        let host = t("(()(())())");
        let e = embed(&t("((())())"), &host).unwrap();
        assert_eq!(e.children[0].0, 1);
        assert_eq!(e.children[1].0, 2);
        assert!(embed(&t("((())(()))"), &host).is_none());
    }
}
