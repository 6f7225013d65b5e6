//! Attractor decompositions of even parity graphs: the canonical
//! construction, a clause-by-clause validator, joins of sub-decompositions,
//! and the construction of low-Strahler decompositions from bounded
//! labelling pairs.

mod ad;
mod bounded;
mod join;
mod memory;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::games::{EdgeId, EdgeSet, GameError, Lasso, Priority, VertexId, VertexSet};
use crate::transduction::SegmentedPath;
use crate::trees::OrderedTree;

pub use ad::{ad_reachability_check, build_ad, is_tight, is_valid_ad, tree_shape, validate_ad};
pub use bounded::{ad_from_bounded_pair, ad_from_bounded_pair_capped, BoundedDecomposition, DEFAULT_STATE_CAP};
pub use join::{attr_partition, dismantle, join_ads};
pub use memory::{memory_product, LabellingPair, Memory, MemoryProduct};

/// `(H, A_0, [(S_1, A_1, D_1), …])` at an even `level`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttractorDecomposition {
    pub level: Priority,
    pub top_edges: EdgeSet,
    pub top_attractor: VertexSet,
    pub children: Vec<AdChild>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdChild {
    pub subgame: VertexSet,
    pub attractor: VertexSet,
    pub sub: AttractorDecomposition,
}

impl AttractorDecomposition {
    pub fn width(&self) -> usize {
        self.children
            .iter()
            .map(|c| c.sub.width())
            .max()
            .unwrap_or(0)
            .max(self.children.len())
    }

    pub fn shape(&self) -> OrderedTree {
        tree_shape(self)
    }

    /// Every vertex covered by the decomposition.
    pub fn vertices(&self) -> VertexSet {
        let mut all = self.top_attractor.clone();
        for c in &self.children {
            all.extend(c.attractor.iter().copied());
        }
        all
    }
}

/// The clause of the definition that a candidate decomposition breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Clause {
    /// The level is odd, or below some priority of the graph.
    Level,
    /// `H` is not the set of edges of top priority.
    TopEdges,
    /// `A_0` differs from the attractor of `H`.
    TopAttractor,
    /// A child sits below level 0.
    ChildBelowZero,
    EmptySubgame,
    /// `S_i` is not inside the residual `V_i`.
    SubgameOutsideResidual,
    /// `(G∖H)|S_i` has an edge above `h-2`.
    SubgamePriority,
    SubgameTerminal,
    /// `S_i` is not closed under successors in `G_i`.
    SubgameClosure,
    /// `A_i` differs from the attractor of `S_i` in `G_i`.
    ChildAttractor,
    /// A child decomposition has the wrong level.
    ChildLevel,
    /// The attractors do not cover the vertex set.
    Coverage,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub clause: Clause,
    /// Child indices (0-based) leading to the offending sub-decomposition.
    pub path: Vec<usize>,
    pub vertex: Option<VertexId>,
    pub edge: Option<EdgeId>,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?} at {:?}", self.clause, self.path)?;
        if let Some(v) = self.vertex {
            write!(f, " vertex {v}")?;
        }
        if let Some(e) = self.edge {
            write!(f, " edge {e}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DecompError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("graph is not even")]
    NotEven(Lasso),
    #[error("labelling J is not even")]
    NotEvenJ(Lasso),
    #[error("level {0} is odd")]
    OddLevel(Priority),
    #[error("edge {edge} has priority {priority} above level {level}")]
    PriorityAboveLevel {
        edge: EdgeId,
        priority: Priority,
        level: Priority,
    },
    #[error("parts overlap at vertex {0}")]
    OverlappingParts(VertexId),
    #[error("join hypothesis violated: {0}")]
    HypothesisViolated(Violation),
    #[error("labelling is not bounded")]
    NotBounded(SegmentedPath),
    #[error("index {0} has the wrong shape")]
    IndexShape(String),
    #[error("product exceeds {cap} states")]
    StateExplosion { cap: usize },
    #[error("rank exceeds the counter bound: {0}")]
    RankOverflow(String),
    #[error("construction broke an invariant: {0}")]
    Internal(String),
}
