//! Parity graphs and games with priorities on edges: attractors, evenness,
//! a recursive solver and strategy checking.

mod attractor;
mod even;
mod graph;
mod solve;
mod strategy;

use thiserror::Error;

pub use attractor::{attractor_edges, attractor_vertices, player_attractor};
pub use even::{find_odd_lasso, is_even};
pub use graph::{
    Edge, EdgeId, EdgeSet, Index, Lasso, ParityGame, ParityGraph, Player, PositionalStrategy,
    Priority, VertexId, VertexSet,
};
pub use solve::{solve, Solution};
pub use strategy::{strategy_graph, strategy_graph_for, verify_winning, verify_winning_for};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error("vertex {0} has no outgoing edge")]
    TerminalVertex(VertexId),
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(VertexId),
    #[error("edge {edge} has priority {priority} outside {index}")]
    PriorityOutOfRange {
        edge: EdgeId,
        priority: Priority,
        index: Index,
    },
    #[error("invalid index [{lo},{hi}]")]
    InvalidIndex { lo: Priority, hi: Priority },
    #[error("owner table has {found} entries, expected {expected}")]
    OwnerMismatch { expected: usize, found: usize },
    #[error("labelling has {found} entries, expected {expected}")]
    LabelLength { expected: usize, found: usize },
    #[error("strategy leaves the region at vertex {vertex} via edge {edge}")]
    StrategyEscapesRegion { vertex: VertexId, edge: EdgeId },
    #[error("strategy has no choice at vertex {0}")]
    UndefinedChoice(VertexId),
    #[error("strategy picks edge {edge} which does not leave vertex {vertex}")]
    ForeignChoice { vertex: VertexId, edge: EdgeId },
}

/// Subgraph on `keep`, reporting the vertices left without successors.
pub fn restrict(g: &ParityGraph, keep: &VertexSet) -> (ParityGraph, VertexSet) {
    let sub = g.restrict(keep);
    let terminal = sub.terminal_vertices();
    (sub, terminal)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn restrict_identity() {
        let g = ParityGraph::from_edges(3, [(0, 1, 1), (1, 2, 2), (2, 0, 0)]).unwrap();
        let (sub, terminal) = restrict(&g, &g.vertex_set());
        assert_eq!(sub, g);
        assert!(terminal.is_empty());
    }

    #[test]
    fn restrict_flags_terminal() {
        let g = ParityGraph::from_edges(2, [(0, 1, 1), (1, 0, 1)]).unwrap();
        let (sub, terminal) = restrict(&g, &[0].into());
        assert_eq!(sub.vertex_set(), [0].into());
        assert_eq!(sub.edge_count(), 0);
        assert_eq!(terminal, [0].into());
    }

    #[test]
    fn index_helpers() {
        let i = Index::new(1, 4).unwrap();
        assert_eq!(i.max_even(), Some(4));
        assert_eq!(i.max_odd(), Some(3));
        assert_eq!(i.odds().collect::<Vec<_>>(), vec![1, 3]);
        assert!(Index::new(3, 2).is_err());
    }

    #[test]
    fn priority_outside_index_rejected() {
        let err = ParityGraph::new(1, [(0, 0, 5)], Index::new(0, 4).unwrap()).unwrap_err();
        assert!(matches!(err, GameError::PriorityOutOfRange { .. }));
    }
}
