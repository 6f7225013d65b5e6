use super::{embeds, OrderedTree, TreeError};

/// Finite universal tree `U(n,k,d)` with every ω-block truncated to `w`
/// copies:
///
/// `⟨w·U(n,k-1,d-1), U(n,k,d-1), w·U(n,k-1,d-1), …, U(n,k,d-1), w·U(n,k-1,d-1)⟩`
///
/// with `n` copies of `U(n,k,d-1)`. Parts that are undefined (`d-1 < k`, or
/// `k-1 = 0`) are dropped. Embeds every tree of depth `≤ d`, n-Strahler
/// number `≤ k` and branching `≤ w`.
pub fn universal_tree(n: u32, k: u32, d: u32, w: usize) -> Result<OrderedTree, TreeError> {
    if k == 0 || k > d {
        return Err(TreeError::Undefined { n, k, d });
    }
    if k == 1 && d == 1 {
        return Ok(OrderedTree::leaf());
    }
    let low = if k > 1 {
        Some(universal_tree(n, k - 1, d - 1, w)?)
    } else {
        None
    };
    let same = if k < d {
        Some(universal_tree(n, k, d - 1, w)?)
    } else {
        None
    };
    let block = |out: &mut Vec<OrderedTree>| {
        if let Some(u) = &low {
            out.extend(std::iter::repeat_n(u.clone(), w));
        }
    };
    let mut children = Vec::new();
    block(&mut children);
    if let Some(s) = &same {
        for _ in 0..n {
            children.push(s.clone());
            block(&mut children);
        }
    }
    Ok(OrderedTree::node(children))
}

pub fn first_non_embeddable<'a>(
    host: &OrderedTree,
    candidates: &'a [OrderedTree],
) -> Option<&'a OrderedTree> {
    candidates.iter().find(|c| !embeds(c, host))
}

pub fn is_universal_for(host: &OrderedTree, candidates: &[OrderedTree]) -> bool {
    first_non_embeddable(host, candidates).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::enumerate_trees;

    #[test]
    fn base_and_undefined() {
        assert_eq!(universal_tree(3, 1, 1, 2).unwrap(), OrderedTree::leaf());
        assert!(universal_tree(1, 3, 2, 2).is_err());
        assert!(universal_tree(1, 0, 2, 2).is_err());
    }

    #[test]
    fn strahler_and_depth() {
        let u = universal_tree(2, 2, 2, 3).unwrap();
        assert_eq!(u.n_strahler(2), 2);
        assert_eq!(u.depth(), 2);
        for n in 1..=2 {
            for d in 1..=3 {
                for k in 1..=d {
                    let u = universal_tree(n, k, d, n as usize + 1).unwrap();
                    assert_eq!(u.depth(), d);
                    assert_eq!(u.n_strahler(n), k);
                }
            }
        }
    }

    #[test]
    fn trivial_universality() {
        let leaf = [OrderedTree::leaf()];
        assert!(is_universal_for(&universal_tree(1, 2, 3, 1).unwrap(), &leaf));
        assert!(!is_universal_for(&OrderedTree::leaf(), &["(())".parse().unwrap()]));
    }

    #[test]
    fn small_grid_universality() {
        let cands = enumerate_trees(8, 3, 2);
        for n in 1..=2u32 {
            for d in 1..=3u32 {
                for k in 1..=d {
                    let u = universal_tree(n, k, d, 2).unwrap();
                    let fam: Vec<_> = cands
                        .iter()
                        .filter(|t| t.depth() <= d && t.n_strahler(n) <= k)
                        .cloned()
                        .collect();
                    assert!(is_universal_for(&u, &fam), "n={n} k={k} d={d}");
                }
            }
        }
    }
}
