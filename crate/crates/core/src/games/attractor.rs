use std::collections::VecDeque;

use super::graph::{EdgeSet, ParityGame, ParityGraph, Player, PositionalStrategy, VertexSet};

/// Vertices from which every infinite path uses an edge of `targets`.
///
/// Computed as the complement of the greatest set of vertices that keep an
/// outgoing non-target edge into the set itself. Vertices without
/// successors have no infinite path and are attracted vacuously.
pub fn attractor_edges(g: &ParityGraph, targets: &EdgeSet) -> VertexSet {
    let avoid = avoiding_core(g, |e| !targets.contains(&e), &vec![true; g.universe()]);
    g.vertices().filter(|&v| !avoid[v]).collect()
}

/// Vertices from which every infinite path eventually visits `targets`.
pub fn attractor_vertices(g: &ParityGraph, targets: &VertexSet) -> VertexSet {
    let mask = attractor_vertices_mask(g, &to_mask(g.universe(), targets));
    (0..mask.len()).filter(|&v| mask[v]).collect()
}

pub(crate) fn attractor_vertices_mask(g: &ParityGraph, targets: &[bool]) -> Vec<bool> {
    let candidates: Vec<bool> = (0..g.universe())
        .map(|v| g.contains(v) && !targets[v])
        .collect();
    let avoid = avoiding_core(g, |_| true, &candidates);
    (0..g.universe())
        .map(|v| g.contains(v) && !avoid[v])
        .collect()
}

pub(crate) fn to_mask(n: usize, set: &VertexSet) -> Vec<bool> {
    let mut mask = vec![false; n];
    for &v in set {
        if v < n {
            mask[v] = true;
        }
    }
    mask
}

/// Greatest subset of `candidates` in which every vertex has a usable edge
/// (per `usable`) to another member.
fn avoiding_core(
    g: &ParityGraph,
    usable: impl Fn(usize) -> bool,
    candidates: &[bool],
) -> Vec<bool> {
    let n = g.universe();
    let mut alive: Vec<bool> = (0..n).map(|v| g.contains(v) && candidates[v]).collect();
    let mut count = vec![0usize; n];
    let mut queue = VecDeque::new();
    for v in g.vertices() {
        if !alive[v] {
            continue;
        }
        count[v] = g
            .out_edges(v)
            .filter(|&e| usable(e) && alive[g.edge(e).target])
            .count();
        if count[v] == 0 {
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for e in g.in_edges(v) {
            let u = g.edge(e).source;
            if alive[u] && usable(e) {
                count[u] -= 1;
                if count[u] == 0 {
                    queue.push_back(u);
                }
            }
        }
    }
    alive
}

/// Alternating attractor: vertices from which `player` can force a visit to
/// `targets`, together with a positional strategy that does so.
pub fn player_attractor(
    game: &ParityGame,
    targets: &VertexSet,
    player: Player,
) -> (VertexSet, PositionalStrategy) {
    let g = &game.graph;
    let n = g.universe();
    let mut inside = vec![false; n];
    let mut count: Vec<usize> = (0..n).map(|v| g.out_edges(v).count()).collect();
    let mut strategy = PositionalStrategy::default();
    let mut queue = VecDeque::new();
    for &v in targets {
        if g.contains(v) && !inside[v] {
            inside[v] = true;
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        for e in g.in_edges(v) {
            let u = g.edge(e).source;
            if inside[u] {
                continue;
            }
            if game.owner(u) == player {
                inside[u] = true;
                strategy.set(u, e);
                queue.push_back(u);
            } else {
                count[u] -= 1;
                if count[u] == 0 {
                    inside[u] = true;
                    queue.push_back(u);
                }
            }
        }
    }
    ((0..n).filter(|&v| inside[v]).collect(), strategy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::Player::{Adam, Eve};

    fn chain() -> ParityGraph {
        ParityGraph::from_edges(3, [(0, 1, 0), (1, 2, 0), (2, 2, 0)]).unwrap()
    }

    #[test]
    fn self_loop_target_edge() {
        let g = ParityGraph::from_edges(1, [(0, 0, 1)]).unwrap();
        assert_eq!(attractor_edges(&g, &[0].into()), [0].into());
    }

    #[test]
    fn avoiding_vertex_excluded() {
        // a -> b is a's only edge; b loops on itself.
        let g = ParityGraph::from_edges(2, [(0, 1, 0), (1, 1, 0), (1, 0, 0)]).unwrap();
        let attr = attractor_edges(&g, &[0].into());
        assert!(attr.contains(&0));
        assert!(!attr.contains(&1));
    }

    #[test]
    fn all_edges_attract_everything() {
        let g = chain();
        assert_eq!(attractor_edges(&g, &g.edge_set()), g.vertex_set());
    }

    #[test]
    fn vertex_attractor_cases() {
        let cyc = ParityGraph::from_edges(2, [(0, 1, 0), (1, 0, 0)]).unwrap();
        assert!(attractor_vertices(&cyc, &VertexSet::new()).is_empty());
        assert_eq!(attractor_vertices(&cyc, &cyc.vertex_set()), cyc.vertex_set());
        assert_eq!(attractor_vertices(&chain(), &[2].into()), [0, 1, 2].into());
    }

    #[test]
    fn terminal_vertex_is_vacuously_attracted() {
        let g = ParityGraph::from_edges(2, [(0, 0, 0)]).unwrap();
        assert_eq!(attractor_vertices(&g, &VertexSet::new()), [1].into());
    }

    #[test]
    fn player_attractor_cases() {
        let g = ParityGraph::from_edges(3, [(0, 1, 0), (0, 2, 0), (1, 1, 0), (2, 2, 0)]).unwrap();
        let eve = ParityGame::new(g.clone(), vec![Eve, Eve, Eve]).unwrap();
        let (set, strat) = player_attractor(&eve, &[1].into(), Eve);
        assert_eq!(set, [0, 1].into());
        assert_eq!(strat.get(0), Some(0));
        let adam = ParityGame::new(g, vec![Adam, Adam, Adam]).unwrap();
        let (set, _) = player_attractor(&adam, &[1].into(), Eve);
        assert_eq!(set, [1].into());
        let (all, _) = player_attractor(&adam, &adam.graph.vertex_set(), Eve);
        assert_eq!(all, adam.graph.vertex_set());
    }
}
