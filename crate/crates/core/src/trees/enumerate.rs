use std::collections::HashMap;

use super::OrderedTree;

/// All ordered trees with at most `max_nodes` nodes, depth at most
/// `max_depth` and every node having at most `max_branch` children; each
/// exactly once, ordered by node count and then by generation order.
pub fn enumerate_trees(max_nodes: usize, max_depth: u32, max_branch: usize) -> Vec<OrderedTree> {
    let mut gen = Gen {
        branch: max_branch,
        trees: HashMap::new(),
        forests: HashMap::new(),
    };
    (1..=max_nodes)
        .flat_map(|s| gen.trees(s, max_depth))
        .collect()
}

struct Gen {
    branch: usize,
    trees: HashMap<(usize, u32), Vec<OrderedTree>>,
    forests: HashMap<(usize, u32, usize), Vec<Vec<OrderedTree>>>,
}

impl Gen {
    /// Trees with exactly `size` nodes and depth at most `depth`.
    fn trees(&mut self, size: usize, depth: u32) -> Vec<OrderedTree> {
        if size == 0 || depth == 0 {
            return Vec::new();
        }
        if size == 1 {
            return vec![OrderedTree::leaf()];
        }
        if let Some(v) = self.trees.get(&(size, depth)) {
            return v.clone();
        }
        let out: Vec<OrderedTree> = self
            .forests(size - 1, depth - 1, self.branch)
            .into_iter()
            .filter(|f| !f.is_empty())
            .map(OrderedTree::node)
            .collect();
        self.trees.insert((size, depth), out.clone());
        out
    }

    /// Sequences of at most `len` trees of depth at most `depth` with
    /// `size` nodes in total.
    fn forests(&mut self, size: usize, depth: u32, len: usize) -> Vec<Vec<OrderedTree>> {
        if size == 0 {
            return vec![Vec::new()];
        }
        if len == 0 || depth == 0 {
            return Vec::new();
        }
        if let Some(v) = self.forests.get(&(size, depth, len)) {
            return v.clone();
        }
        let mut out = Vec::new();
        for first in 1..=size {
            let heads = self.trees(first, depth);
            if heads.is_empty() {
                continue;
            }
            let tails = self.forests(size - first, depth, len - 1);
            for h in &heads {
                for tail in &tails {
                    let mut f = Vec::with_capacity(tail.len() + 1);
                    f.push(h.clone());
                    f.extend(tail.iter().cloned());
                    out.push(f);
                }
            }
        }
        self.forests.insert((size, depth, len), out.clone());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn single_node() {
        assert_eq!(enumerate_trees(1, 5, 5), vec![OrderedTree::leaf()]);
    }

    #[test]
    fn hand_count() {
        let got: Vec<String> = enumerate_trees(3, 2, 2).iter().map(|t| t.to_string()).collect();
        assert_eq!(got, vec!["()", "(())", "(()())"]);
    }

    #[test]
    fn respects_bounds_without_duplicates() {
        let all = enumerate_trees(7, 3, 2);
        let set: BTreeSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
        assert!(all.iter().all(|t| t.size() <= 7 && t.depth() <= 3 && t.max_branching() <= 2));
    }
}
