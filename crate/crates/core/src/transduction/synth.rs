use std::collections::HashMap;

use super::reg::{normalize_j, reg_product, strategy_from_rule, verify_reg_strategy, RegMove, RegNode, RegOptions, RegProduct};
use super::{n_bound_check, RegError};
use crate::decomposition::{validate_ad, AttractorDecomposition, DecompError, LabellingPair};
use crate::games::{find_odd_lasso, Index, ParityGame, ParityGraph, PositionalStrategy, Priority, VertexId};

/// A product together with an Eve strategy on it.
#[derive(Clone, Debug)]
pub struct SynthResult {
    pub product: RegProduct,
    pub strategy: PositionalStrategy,
    /// Number of non-trivial registers the strategy was built for.
    pub registers: u32,
}

impl SynthResult {
    /// Solver-free check that the strategy wins from every base vertex.
    pub fn verify(&self) -> Result<(), RegError> {
        let roots: Vec<VertexId> = self.product.game.graph.vertices().filter_map(|v| match &self.product.nodes[v] {
            RegNode::Move { vertex, .. } if self.product.initial(*vertex) == Some(v) => Some(*vertex),
            _ => None,
        }).collect();
        verify_reg_strategy(&self.product, &self.strategy, &roots)
    }
}

/// Where a vertex sits in a decomposition: the child indices leading to the
/// smallest sub-decomposition containing it, then its attractor there
/// (`0` for `A_0`, `k+1` for the attractor of child `k`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Address {
    pub path: Vec<usize>,
    pub slot: usize,
}

impl Address {
    /// Sort key realising the order on attractors: `A_0` first, then each
    /// child's subtree followed by the rest of its attractor.
    fn key(&self) -> Vec<usize> {
        let mut k: Vec<usize> = self.path.iter().map(|c| 2 * (c + 1)).collect();
        k.push(if self.slot == 0 { 0 } else { 2 * self.slot + 1 });
        k
    }
}

/// Address of every vertex of `d`.
pub fn locate(d: &AttractorDecomposition) -> HashMap<VertexId, Address> {
    let mut out = HashMap::new();
    fill(d, &mut Vec::new(), &mut out);
    out
}

fn fill(d: &AttractorDecomposition, path: &mut Vec<usize>, out: &mut HashMap<VertexId, Address>) {
    for &v in &d.top_attractor {
        out.insert(v, Address { path: path.clone(), slot: 0 });
    }
    for (k, c) in d.children.iter().enumerate() {
        for v in c.attractor.difference(&c.subgame) {
            out.insert(*v, Address { path: path.clone(), slot: k + 1 });
        }
        path.push(k);
        fill(&c.sub, path, out);
        path.pop();
    }
}

/// Level and n-Strahler number of every sub-decomposition, by path.
fn node_info(d: &AttractorDecomposition, n: u32) -> HashMap<Vec<usize>, (Priority, u32)> {
    fn go(d: &AttractorDecomposition, n: u32, path: &mut Vec<usize>, out: &mut HashMap<Vec<usize>, (Priority, u32)>) {
        out.insert(path.clone(), (d.level, d.shape().n_strahler(n)));
        for (k, c) in d.children.iter().enumerate() {
            path.push(k);
            go(&c.sub, n, path, out);
            path.pop();
        }
    }
    let mut out = HashMap::new();
    go(d, n, &mut Vec::new(), &mut out);
    out
}

/// Eve's strategy in `Reg_{[1,2h]}^{n+1}(g)` read off a decomposition of
/// the one-player graph `g`, with `h` its n-Strahler number. For a move
/// `(q, q')` of priority `p` in the smallest common sub-decomposition of
/// level `l` and n-Strahler number `S`:
/// - Eve passes on `l-1` if `p` is odd and below it, else `p`;
/// - she picks `r_0` moving left, `r_S` moving right, and within one
///   attractor `r_0` or `r_1` depending on whether that value is below `l`.
pub fn synth_from_ad(
    g: &ParityGraph,
    d: &AttractorDecomposition,
    n: u32,
    opts: RegOptions,
) -> Result<SynthResult, RegError> {
    if n == 0 {
        return Err(RegError::PreconditionFailed("n must be positive".into()));
    }
    validate_ad(g, d).map_err(RegError::InvalidDecomposition)?;
    let h = d.shape().n_strahler(n);
    let address = locate(d);
    let info = node_info(d, n);
    let product = reg_product(&ParityGame::adam_only(g.clone()), Index::new(1, 2 * h)?, n + 1, opts)?;
    let decide = |e: usize| {
        let edge = g.edge(e);
        let (a, b) = (&address[&edge.source], &address[&edge.target]);
        let common = a.path.iter().zip(&b.path).take_while(|(x, y)| x == y).count();
        let (l, s) = info[&a.path[..common].to_vec()];
        let p = edge.priority;
        let i = if p % 2 == 1 && p + 1 < l { l - 1 } else { p };
        let reg = match b.key().cmp(&a.key()) {
            std::cmp::Ordering::Less => 0,
            std::cmp::Ordering::Greater => s as usize,
            std::cmp::Ordering::Equal if i < l => 0,
            std::cmp::Ordering::Equal => 1,
        };
        (reg, i)
    };
    let strategy = strategy_from_rule(&product, |node| match node {
        RegNode::Choice { edge, .. } => Some(RegMove::Register(decide(*edge).0)),
        RegNode::Sharp { edge, .. } => Some(RegMove::Sharp(decide(*edge).1)),
        _ => None,
    })?;
    Ok(SynthResult {
        product,
        strategy,
        registers: h,
    })
}

/// Eve's strategy in `Reg_J^{n+1}` over the I-labelled graph of an `n`-bound
/// pair: pass on the I-label unchanged and pick `r_{⌊j'/2⌋}` for the
/// J-label `j'` of the edge just taken.
pub fn strategy_from_bounded_pair(pair: &LabellingPair, n: u32, opts: RegOptions) -> Result<SynthResult, RegError> {
    let gi = pair.view_i()?;
    let gj = pair.view_j()?;
    if let Some(l) = find_odd_lasso(&gi)? {
        return Err(RegError::Decomposition(DecompError::NotEven(l)));
    }
    if let Some(l) = find_odd_lasso(&gj)? {
        return Err(RegError::Decomposition(DecompError::NotEvenJ(l)));
    }
    n_bound_check(pair, n as usize).map_err(RegError::NotBounded)?;
    let shifted = normalize_j(pair.index_j);
    let product = reg_product(&ParityGame::adam_only(gi), pair.index_j, n + 1, opts)?;
    let lift = |p: Priority| (p as i64 + shifted.lo as i64 - pair.index_j.lo as i64) as Priority;
    let strategy = strategy_from_rule(&product, |node| match node {
        RegNode::Choice { edge, .. } => Some(RegMove::Register((lift(pair.label_j[*edge]) / 2) as usize)),
        RegNode::Sharp { edge, .. } => Some(RegMove::Sharp(pair.label_i[*edge])),
        _ => None,
    })?;
    Ok(SynthResult {
        product,
        strategy,
        registers: shifted.hi / 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::build_ad;
    use crate::games::Player;
    use crate::transduction::eve_wins_reg;

    #[test]
    fn leaf_shape_uses_two_registers() {
        let g = ParityGraph::from_edges(2, [(0, 1, 2), (1, 0, 1)]).unwrap();
        let d = build_ad(&g, 2).unwrap();
        assert!(d.children.is_empty());
        let s = synth_from_ad(&g, &d, 1, RegOptions::default()).unwrap();
        assert_eq!(s.registers, 1);
        assert_eq!(s.verify(), Ok(()));
    }

    #[test]
    fn two_leaf_children_with_n1() {
        // Two safe loops joined by an odd edge: shape (()()).
        let g = ParityGraph::from_edges(2, [(0, 0, 0), (1, 1, 0), (1, 0, 1)]).unwrap();
        let g = g.with_index(Index::new(0, 2).unwrap()).unwrap();
        let d = build_ad(&g, 2).unwrap();
        assert_eq!(d.shape().to_string(), "(()())");
        let s = synth_from_ad(&g, &d, 1, RegOptions::default()).unwrap();
        assert_eq!(s.registers, 2);
        assert_eq!(s.verify(), Ok(()));
    }

    #[test]
    fn addresses_order_left_to_right() {
        let g = ParityGraph::from_edges(3, [(0, 0, 0), (1, 1, 0), (1, 0, 1), (2, 1, 1), (2, 2, 0)]).unwrap();
        let d = build_ad(&g, 2).unwrap();
        let a = locate(&d);
        assert!(a[&0].key() < a[&1].key());
        assert!(a[&1].key() < a[&2].key());
    }

    #[test]
    fn bounded_pair_strategy_wins() {
        let g = ParityGraph::from_edges(2, [(0, 1, 0), (1, 0, 0)]).unwrap();
        let pair = LabellingPair::new(
            g,
            vec![1, 2],
            Index::new(0, 2).unwrap(),
            vec![2, 1],
            Index::new(1, 2).unwrap(),
        )
        .unwrap();
        let s = strategy_from_bounded_pair(&pair, 1, RegOptions::default()).unwrap();
        assert_eq!(s.verify(), Ok(()));
        let gi = ParityGame::adam_only(pair.view_i().unwrap());
        assert!(eve_wins_reg(&gi, pair.index_j, 2, 0, RegOptions::default()).unwrap());
        assert_eq!(gi.owner(0), Player::Adam);
    }
}
