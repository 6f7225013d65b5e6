use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{GenParams, LabError};
use crate::decomposition::LabellingPair;
use crate::games::{
    is_even, solve, strategy_graph, Index, ParityGame, ParityGraph, Player, Priority,
};
use crate::transduction::is_n_bound;
use crate::trees::OrderedTree;

const RETRIES: usize = 500;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn edges_with(
    rng: &mut ChaCha8Rng,
    n: usize,
    density: f64,
    mut priority: impl FnMut(&mut ChaCha8Rng) -> Priority,
) -> Vec<(usize, usize, Priority)> {
    let mut edges = Vec::new();
    for v in 0..n {
        let first = rng.gen_range(0..n);
        edges.push((v, first, priority(rng)));
        for w in 0..n {
            if rng.gen_bool(density.clamp(0.0, 1.0)) {
                edges.push((v, w, priority(rng)));
            }
        }
    }
    edges
}

/// A one-player graph with exactly `vertex_count` vertices, each with at
/// least one successor, and priorities in `[0, priority_cap]`.
pub fn random_graph(p: &GenParams) -> ParityGraph {
    let mut r = rng(p.seed);
    let cap = p.priority_cap;
    let edges = edges_with(&mut r, p.vertex_count.max(1), p.edge_density, |r| r.gen_range(0..=cap));
    ParityGraph::new(p.vertex_count.max(1), edges, Index { lo: 0, hi: cap }).expect("generated in range")
}

pub fn random_game(p: &GenParams) -> ParityGame {
    let g = random_graph(p);
    let mut r = rng(p.seed ^ 0x9e37_79b9_7f4a_7c15);
    let owner = (0..g.universe())
        .map(|_| if r.gen_bool(0.5) { Player::Eve } else { Player::Adam })
        .collect();
    ParityGame::new(g, owner).expect("owner table matches")
}

/// Eve's winning strategy graph on her region of a random game, compacted.
pub fn random_even_graph(p: &GenParams) -> Result<ParityGraph, LabError> {
    for attempt in 0..RETRIES {
        let game = random_game(&p.with_seed(p.seed.wrapping_add(attempt as u64 * 0x1000_0001)));
        if let Some(g) = even_part(&game) {
            return Ok(g);
        }
    }
    Err(LabError::ExhaustedRetries(RETRIES))
}

fn even_part(game: &ParityGame) -> Option<ParityGraph> {
    let sol = solve(game).expect("generated games have no terminal vertex");
    if sol.eve_region.is_empty() {
        return None;
    }
    let g = strategy_graph(game, &sol.eve_strategy, &sol.eve_region).ok()?;
    let (g, _, _) = g.compact();
    debug_assert!(is_even(&g).unwrap());
    Some(g)
}

/// An even graph whose canonical decomposition has shape `tree`: leaves
/// are vertices with a top-priority loop, and the components of siblings
/// are chained right to left by edges of the odd priority just below the
/// parent's level.
pub fn planted_even_graph(tree: &OrderedTree) -> ParityGraph {
    fn build(t: &OrderedTree, level: Priority, edges: &mut Vec<(usize, usize, Priority)>, next: &mut usize) -> usize {
        let first = *next;
        if t.is_leaf() {
            edges.push((first, first, level));
            *next += 1;
            return first;
        }
        let mut reps = Vec::new();
        for c in &t.children {
            reps.push(build(c, level - 2, edges, next));
        }
        for w in reps.windows(2) {
            edges.push((w[1], w[0], level - 1));
        }
        first
    }
    let level = 2 * (tree.depth() - 1);
    let mut edges = Vec::new();
    let mut next = 0;
    build(tree, level, &mut edges, &mut next);
    ParityGraph::new(next, edges, Index { lo: 0, hi: level }).expect("planted graph is well formed")
}

/// A pair `(I, J)` on a random graph, both even, with `I` `n`-bound by `J`.
/// `J` is drawn first as Eve's strategy graph of a game labelled in
/// `index_j`; `I` starts as the parity-preserving copy of `J` (never
/// dominated by an odd/even mismatch) and then gets a few random labels.
pub fn random_bounded_pair(p: &GenParams, n: usize) -> Result<LabellingPair, LabError> {
    let ij = p.index_j;
    let cap = p.priority_cap.max(1);
    let mut r = rng(p.seed ^ 0x5851_f42d_4c95_7f2d);
    for attempt in 0..RETRIES {
        let seed = p.seed.wrapping_add(attempt as u64 * 0x2000_0003);
        let mut gr = rng(seed);
        let edges = edges_with(&mut gr, p.vertex_count.max(1), p.edge_density, |r| r.gen_range(ij.lo..=ij.hi));
        let g = ParityGraph::new(p.vertex_count.max(1), edges, ij).expect("generated in range");
        let owner = (0..g.universe())
            .map(|_| if gr.gen_bool(0.5) { Player::Eve } else { Player::Adam })
            .collect();
        let Some(gj) = even_part(&ParityGame::new(g, owner).expect("owner table matches")) else {
            continue;
        };
        let label_j: Vec<Priority> = gj.edges().map(|e| gj.edge(e).priority).collect();
        let mut label_i: Vec<Priority> = label_j
            .iter()
            .map(|&x| if x <= cap { x } else { cap - (x - cap) % 2 })
            .collect();
        if r.gen_bool(0.3) {
            for x in label_i.iter_mut() {
                *x = r.gen_range(0..=cap);
            }
        } else {
            for _ in 0..r.gen_range(0..=3) {
                let e = r.gen_range(0..label_i.len());
                label_i[e] = r.gen_range(0..=cap);
            }
        }
        let pair = LabellingPair::new(gj.clone(), label_i, Index { lo: 0, hi: cap }, label_j, ij)
            .expect("labels sized to the graph");
        if is_even(&pair.view_i().unwrap()).unwrap() && is_n_bound(&pair, n) {
            return Ok(pair);
        }
    }
    Err(LabError::ExhaustedRetries(RETRIES))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::build_ad;

    fn params(seed: u64) -> GenParams {
        GenParams {
            seed,
            ..GenParams::default()
        }
    }

    #[test]
    fn deterministic_and_sized() {
        let a = random_game(&params(3));
        let b = random_game(&params(3));
        assert_eq!(a, b);
        assert_eq!(a.graph.vertex_count(), 5);
        assert!(a.graph.terminal_vertices().is_empty());
    }

    #[test]
    fn even_graphs_are_even() {
        let mut shapes = std::collections::BTreeSet::new();
        for s in 0..200 {
            let g = random_even_graph(&params(s)).unwrap();
            assert!(is_even(&g).unwrap());
            let h = g.max_priority().unwrap_or(0).div_ceil(2) * 2;
            shapes.insert(build_ad(&g, h).unwrap().children.len().min(2));
        }
        assert!(shapes.contains(&0) && shapes.contains(&2), "{shapes:?}");
    }

    #[test]
    fn bounded_pairs_satisfy_contract() {
        for n in 0..3 {
            for s in 0..40 {
                let p = random_bounded_pair(&params(s), n).unwrap();
                assert!(is_even(&p.view_i().unwrap()).unwrap());
                assert!(is_even(&p.view_j().unwrap()).unwrap());
                assert!(is_n_bound(&p, n));
            }
        }
    }

    #[test]
    fn planted_shape_is_recovered() {
        for t in ["()", "(()())", "((()())(()()))", "(()(())())"] {
            let tree: OrderedTree = t.parse().unwrap();
            let g = planted_even_graph(&tree);
            let d = build_ad(&g, 2 * (tree.depth() - 1)).unwrap();
            assert_eq!(d.shape(), tree, "{t}");
        }
    }
}
