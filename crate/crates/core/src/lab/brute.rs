use std::collections::VecDeque;

use super::LabError;
use crate::games::{EdgeId, ParityGame, Player, VertexId, VertexSet};
use crate::trees::OrderedTree;

pub const DEFAULT_BRUTE_CAP: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteRegions {
    pub eve: VertexSet,
    pub adam: VertexSet,
}

/// Exact winning regions by trying every positional Eve strategy. Under a
/// fixed strategy Eve wins from `v` iff no cycle with odd maximum is
/// reachable; such a cycle exists iff some edge `u → w` of odd priority `p`
/// has `w` reaching `u` through edges of priority `≤ p`.
pub fn brute_solve(game: &ParityGame, cap: u128) -> Result<BruteRegions, LabError> {
    let g = &game.graph;
    let vertices: Vec<VertexId> = g.vertices().collect();
    let options: Vec<Vec<EdgeId>> = vertices
        .iter()
        .map(|&v| {
            if game.owner(v) == Player::Eve {
                g.out_edges(v).collect()
            } else {
                Vec::new()
            }
        })
        .collect();
    let strategies: u128 = options.iter().map(|o| o.len().max(1) as u128).product();
    if strategies > cap {
        return Err(LabError::TooLarge { strategies, cap });
    }
    let mut eve = VertexSet::new();
    let mut pick = vec![0usize; vertices.len()];
    loop {
        let allowed = |e: EdgeId| {
            let s = g.edge(e).source;
            let k = vertices.binary_search(&s).unwrap();
            options[k].is_empty() || options[k][pick[k]] == e
        };
        let live: Vec<EdgeId> = g.edges().filter(|&e| allowed(e)).collect();
        let bad = losing(game, &live);
        eve.extend(vertices.iter().filter(|v| !bad[**v]));
        // Advance the mixed-radix counter.
        let mut k = 0;
        loop {
            if k == vertices.len() {
                let adam = vertices.iter().copied().filter(|v| !eve.contains(v)).collect();
                return Ok(BruteRegions { eve, adam });
            }
            if options[k].len() > 1 && pick[k] + 1 < options[k].len() {
                pick[k] += 1;
                break;
            }
            pick[k] = 0;
            k += 1;
        }
    }
}

/// Vertices from which the graph restricted to `live` reaches an odd cycle.
fn losing(game: &ParityGame, live: &[EdgeId]) -> Vec<bool> {
    let g = &game.graph;
    let n = g.universe();
    let mut succ: Vec<Vec<(VertexId, u32)>> = vec![Vec::new(); n];
    let mut pred: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for &e in live {
        let edge = g.edge(e);
        succ[edge.source].push((edge.target, edge.priority));
        pred[edge.target].push(edge.source);
    }
    let mut bad = vec![false; n];
    let mut queue = VecDeque::new();
    for &e in live {
        let edge = g.edge(e);
        if edge.priority.is_multiple_of(2) || bad[edge.source] {
            continue;
        }
        // Does the target get back to the source without exceeding p?
        let mut seen = vec![false; n];
        let mut stack = vec![edge.target];
        seen[edge.target] = true;
        while let Some(v) = stack.pop() {
            for &(w, p) in &succ[v] {
                if p <= edge.priority && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if seen[edge.source] {
            bad[edge.source] = true;
            queue.push_back(edge.source);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &u in &pred[v] {
            if !bad[u] {
                bad[u] = true;
                queue.push_back(u);
            }
        }
    }
    bad
}

/// Embeddability by trying every increasing assignment of children to
/// host children, without the greedy shortcut.
pub fn brute_embeds(t: &OrderedTree, host: &OrderedTree) -> bool {
    fn assign(ts: &[OrderedTree], hs: &[OrderedTree]) -> bool {
        let Some((first, rest)) = ts.split_first() else {
            return true;
        };
        (0..hs.len()).any(|k| brute_embeds(first, &hs[k]) && assign(rest, &hs[k + 1..]))
    }
    assign(&t.children, &host.children)
}
