use std::collections::VecDeque;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use super::graph::{EdgeId, Lasso, ParityGraph, Priority};
use super::GameError;

/// True iff every infinite path of `g` is parity accepting.
pub fn is_even(g: &ParityGraph) -> Result<bool, GameError> {
    Ok(find_odd_lasso(g)?.is_none())
}

/// Looks for a cycle whose maximal priority is odd.
///
/// For each odd `p`, from the top down, the subgraph of edges with priority
/// at most `p` contains such a cycle exactly when some priority-`p` edge has
/// both endpoints in one strongly connected component.
pub fn find_odd_lasso(g: &ParityGraph) -> Result<Option<Lasso>, GameError> {
    g.check_no_terminal()?;
    let Some(top) = g.max_priority() else {
        return Ok(None);
    };
    let mut odd: Vec<Priority> = g
        .edges()
        .map(|e| g.edge(e).priority)
        .filter(|p| p % 2 == 1)
        .collect();
    odd.sort_unstable();
    odd.dedup();
    debug_assert!(odd.iter().all(|&p| p <= top));
    for &p in odd.iter().rev() {
        let sub = g.filter_edges(|_, edge| edge.priority <= p);
        let comp = components(&sub);
        let witness = sub.edges().find(|&e| {
            let edge = sub.edge(e);
            edge.priority == p && comp[edge.source] == comp[edge.target]
        });
        if let Some(e) = witness {
            let edge = sub.edge(e);
            let back = path_within(&sub, &comp, edge.target, edge.source);
            let mut cycle = vec![e];
            cycle.extend(back);
            return Ok(Some(Lasso {
                stem: Vec::new(),
                cycle,
            }));
        }
    }
    Ok(None)
}

/// Strongly connected component id of every present vertex.
pub(crate) fn components(g: &ParityGraph) -> Vec<usize> {
    let mut pg: DiGraph<usize, ()> = DiGraph::new();
    let mut node = vec![NodeIndex::end(); g.universe()];
    for v in g.vertices() {
        node[v] = pg.add_node(v);
    }
    for e in g.edges() {
        let edge = g.edge(e);
        pg.add_edge(node[edge.source], node[edge.target], ());
    }
    let mut comp = vec![usize::MAX; g.universe()];
    for (id, scc) in tarjan_scc(&pg).into_iter().enumerate() {
        for n in scc {
            comp[pg[n]] = id;
        }
    }
    comp
}

/// Shortest path from `from` to `to` using edges inside one component.
fn path_within(g: &ParityGraph, comp: &[usize], from: usize, to: usize) -> Vec<EdgeId> {
    if from == to {
        return Vec::new();
    }
    let mut parent: Vec<Option<EdgeId>> = vec![None; g.universe()];
    let mut seen = vec![false; g.universe()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for e in g.out_edges(v) {
            let w = g.edge(e).target;
            if seen[w] || comp[w] != comp[from] {
                continue;
            }
            seen[w] = true;
            parent[w] = Some(e);
            if w == to {
                let mut path = Vec::new();
                let mut cur = to;
                while cur != from {
                    let e = parent[cur].expect("bfs parent");
                    path.push(e);
                    cur = g.edge(e).source;
                }
                path.reverse();
                return path;
            }
            queue.push_back(w);
        }
    }
    unreachable!("vertices of one component are mutually reachable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_self_loop() {
        let g = ParityGraph::from_edges(1, [(0, 0, 1)]).unwrap();
        let lasso = find_odd_lasso(&g).unwrap().unwrap();
        assert_eq!(lasso.cycle, vec![0]);
        assert!(lasso.stem.is_empty());
    }

    #[test]
    fn even_self_loop() {
        let g = ParityGraph::from_edges(1, [(0, 0, 2)]).unwrap();
        assert!(is_even(&g).unwrap());
    }

    #[test]
    fn dominated_odd_cycle_is_even() {
        let g = ParityGraph::from_edges(2, [(0, 1, 3), (1, 0, 4), (1, 1, 1)]).unwrap();
        let lasso = find_odd_lasso(&g).unwrap().unwrap();
        assert_eq!(lasso.cycle_max(&g), Some(1));
        let g = ParityGraph::from_edges(2, [(0, 1, 3), (1, 0, 4), (1, 1, 2)]).unwrap();
        assert!(is_even(&g).unwrap());
    }

    #[test]
    fn terminal_rejected() {
        let g = ParityGraph::from_edges(2, [(0, 1, 0)]).unwrap();
        assert_eq!(is_even(&g), Err(GameError::TerminalVertex(1)));
    }

    #[test]
    fn lasso_is_well_formed() {
        let g = ParityGraph::from_edges(3, [(0, 1, 0), (1, 2, 3), (2, 0, 2), (2, 2, 0)]).unwrap();
        let lasso = find_odd_lasso(&g).unwrap().unwrap();
        assert!(lasso.is_well_formed(&g));
        assert_eq!(lasso.cycle_max(&g), Some(3));
    }
}
