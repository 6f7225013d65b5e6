use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::GameError;

pub type VertexId = usize;
pub type EdgeId = usize;
pub type Priority = u32;
pub type VertexSet = BTreeSet<VertexId>;
pub type EdgeSet = BTreeSet<EdgeId>;

/// A contiguous, non-empty range of priorities `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Index {
    pub lo: Priority,
    pub hi: Priority,
}

impl Index {
    pub fn new(lo: Priority, hi: Priority) -> Result<Self, GameError> {
        if lo > hi {
            return Err(GameError::InvalidIndex { lo, hi });
        }
        Ok(Index { lo, hi })
    }

    pub fn contains(&self, p: Priority) -> bool {
        self.lo <= p && p <= self.hi
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn iter(&self) -> impl Iterator<Item = Priority> {
        self.lo..=self.hi
    }

    pub fn odds(&self) -> impl Iterator<Item = Priority> {
        self.iter().filter(|p| p % 2 == 1)
    }

    pub fn evens(&self) -> impl Iterator<Item = Priority> {
        self.iter().filter(|p| p % 2 == 0)
    }

    pub fn max_even(&self) -> Option<Priority> {
        self.evens().last()
    }

    pub fn max_odd(&self) -> Option<Priority> {
        self.odds().last()
    }

    pub fn union(&self, other: &Index) -> Index {
        Index {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub source: VertexId,
    pub target: VertexId,
    pub priority: Priority,
}

#[derive(Debug)]
struct Arena {
    edges: Vec<Edge>,
    out: Vec<Vec<EdgeId>>,
    inc: Vec<Vec<EdgeId>>,
}

/// A directed graph with priorities on edges.
///
/// Vertex and edge ids are stable under [`ParityGraph::restrict`] and the
/// other subgraph operations: a subgraph shares the arena of its parent and
/// only masks vertices and edges out. An edge is live when it is enabled and
/// both of its endpoints are present.
#[derive(Clone, Debug)]
pub struct ParityGraph {
    arena: Arc<Arena>,
    present: Vec<bool>,
    enabled: Vec<bool>,
    index: Index,
}

impl ParityGraph {
    pub fn new(
        num_vertices: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId, Priority)>,
        index: Index,
    ) -> Result<Self, GameError> {
        let mut list = Vec::new();
        let mut out = vec![Vec::new(); num_vertices];
        let mut inc = vec![Vec::new(); num_vertices];
        for (id, (source, target, priority)) in edges.into_iter().enumerate() {
            for v in [source, target] {
                if v >= num_vertices {
                    return Err(GameError::VertexOutOfRange(v));
                }
            }
            if !index.contains(priority) {
                return Err(GameError::PriorityOutOfRange {
                    edge: id,
                    priority,
                    index,
                });
            }
            out[source].push(id);
            inc[target].push(id);
            list.push(Edge {
                source,
                target,
                priority,
            });
        }
        let m = list.len();
        Ok(ParityGraph {
            arena: Arc::new(Arena {
                edges: list,
                out,
                inc,
            }),
            present: vec![true; num_vertices],
            enabled: vec![true; m],
            index,
        })
    }

    /// Builds a graph whose index is the tightest range covering its
    /// priorities, widened to start at 0.
    pub fn from_edges(
        num_vertices: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId, Priority)>,
    ) -> Result<Self, GameError> {
        let edges: Vec<_> = edges.into_iter().collect();
        let hi = edges.iter().map(|e| e.2).max().unwrap_or(0);
        Self::new(num_vertices, edges, Index { lo: 0, hi })
    }

    pub fn universe(&self) -> usize {
        self.present.len()
    }

    pub fn index(&self) -> Index {
        self.index
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v < self.present.len() && self.present[v]
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.present.len()).filter(move |&v| self.present[v])
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices().collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.present.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_count() == 0
    }

    pub fn presence_mask(&self) -> &[bool] {
        &self.present
    }

    /// Total number of edge slots in the shared arena (live or not).
    pub fn edge_slots(&self) -> usize {
        self.arena.edges.len()
    }

    pub fn edge(&self, e: EdgeId) -> Edge {
        self.arena.edges[e]
    }

    pub fn is_live(&self, e: EdgeId) -> bool {
        let edge = &self.arena.edges[e];
        self.enabled[e] && self.present[edge.source] && self.present[edge.target]
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.arena.edges.len()).filter(move |&e| self.is_live(e))
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges().collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    pub fn out_edges(&self, v: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        let list: &[EdgeId] = if self.contains(v) {
            &self.arena.out[v]
        } else {
            &[]
        };
        list.iter().copied().filter(move |&e| self.is_live(e))
    }

    pub fn in_edges(&self, v: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        let list: &[EdgeId] = if self.contains(v) {
            &self.arena.inc[v]
        } else {
            &[]
        };
        list.iter().copied().filter(move |&e| self.is_live(e))
    }

    pub fn successors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.out_edges(v).map(move |e| self.arena.edges[e].target)
    }

    pub fn max_priority(&self) -> Option<Priority> {
        self.edges().map(|e| self.edge(e).priority).max()
    }

    /// Subgraph on `keep ∩ vertices`. Vertices left without successors are
    /// tolerated; see [`ParityGraph::terminal_vertices`].
    pub fn restrict(&self, keep: &VertexSet) -> ParityGraph {
        let mut present = vec![false; self.present.len()];
        for &v in keep {
            if self.contains(v) {
                present[v] = true;
            }
        }
        self.with_presence(present)
    }

    pub fn restrict_mask(&self, keep: &[bool]) -> ParityGraph {
        let present = self
            .present
            .iter()
            .zip(keep)
            .map(|(&a, &b)| a && b)
            .collect();
        self.with_presence(present)
    }

    pub fn remove_vertices(&self, removed: &VertexSet) -> ParityGraph {
        let mut present = self.present.clone();
        for &v in removed {
            if v < present.len() {
                present[v] = false;
            }
        }
        self.with_presence(present)
    }

    fn with_presence(&self, present: Vec<bool>) -> ParityGraph {
        ParityGraph {
            arena: Arc::clone(&self.arena),
            present,
            enabled: self.enabled.clone(),
            index: self.index,
        }
    }

    pub fn without_edges(&self, removed: &EdgeSet) -> ParityGraph {
        let mut enabled = self.enabled.clone();
        for &e in removed {
            if e < enabled.len() {
                enabled[e] = false;
            }
        }
        ParityGraph {
            arena: Arc::clone(&self.arena),
            present: self.present.clone(),
            enabled,
            index: self.index,
        }
    }

    /// Keeps only the live edges accepted by `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(EdgeId, &Edge) -> bool) -> ParityGraph {
        let mut enabled = self.enabled.clone();
        for (e, edge) in self.arena.edges.iter().enumerate() {
            if enabled[e] && !keep(e, edge) {
                enabled[e] = false;
            }
        }
        ParityGraph {
            arena: Arc::clone(&self.arena),
            present: self.present.clone(),
            enabled,
            index: self.index,
        }
    }

    pub fn terminal_vertices(&self) -> VertexSet {
        self.vertices()
            .filter(|&v| self.out_edges(v).next().is_none())
            .collect()
    }

    pub fn check_no_terminal(&self) -> Result<(), GameError> {
        match self.terminal_vertices().into_iter().next() {
            Some(v) => Err(GameError::TerminalVertex(v)),
            None => Ok(()),
        }
    }

    /// Same structure and masks, new priorities (indexed by edge id).
    pub fn with_priorities(&self, priorities: &[Priority], index: Index) -> Result<ParityGraph, GameError> {
        let mut edges = self.arena.edges.clone();
        for (id, (edge, &p)) in edges.iter_mut().zip(priorities).enumerate() {
            if self.is_live(id) && !index.contains(p) {
                return Err(GameError::PriorityOutOfRange {
                    edge: id,
                    priority: p,
                    index,
                });
            }
            edge.priority = p;
        }
        Ok(ParityGraph {
            arena: Arc::new(Arena {
                edges,
                out: self.arena.out.clone(),
                inc: self.arena.inc.clone(),
            }),
            present: self.present.clone(),
            enabled: self.enabled.clone(),
            index,
        })
    }

    /// Adds `delta` to every priority. Flips parity when `delta` is odd.
    pub fn shifted(&self, delta: Priority) -> ParityGraph {
        let priorities: Vec<Priority> = self.arena.edges.iter().map(|e| e.priority + delta).collect();
        let index = Index {
            lo: self.index.lo + delta,
            hi: self.index.hi + delta,
        };
        self.with_priorities(&priorities, index)
            .expect("shifted priorities stay inside the shifted index")
    }

    pub fn with_index(&self, index: Index) -> Result<ParityGraph, GameError> {
        let priorities: Vec<Priority> = self.arena.edges.iter().map(|e| e.priority).collect();
        self.with_priorities(&priorities, index)
    }

    /// Renumbers present vertices and live edges densely. Returns the new
    /// graph with the old id of every new vertex and edge.
    pub fn compact(&self) -> (ParityGraph, Vec<VertexId>, Vec<EdgeId>) {
        let old_vertices: Vec<VertexId> = self.vertices().collect();
        let mut renum = BTreeMap::new();
        for (new, &old) in old_vertices.iter().enumerate() {
            renum.insert(old, new);
        }
        let old_edges: Vec<EdgeId> = self.edges().collect();
        let edges = old_edges.iter().map(|&e| {
            let edge = self.edge(e);
            (renum[&edge.source], renum[&edge.target], edge.priority)
        });
        let graph = ParityGraph::new(old_vertices.len(), edges, self.index)
            .expect("compaction preserves validity");
        (graph, old_vertices, old_edges)
    }

    /// Vertices reachable from `from` (inclusive) along live edges.
    pub fn reachable_from(&self, from: impl IntoIterator<Item = VertexId>) -> VertexSet {
        let mut seen = vec![false; self.universe()];
        let mut stack: Vec<VertexId> = Vec::new();
        for v in from {
            if self.contains(v) && !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
        while let Some(v) = stack.pop() {
            for w in self.successors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        (0..seen.len()).filter(|&v| seen[v]).collect()
    }

    /// Vertices from which some vertex of `to` is reachable (inclusive).
    pub fn reaching(&self, to: impl IntoIterator<Item = VertexId>) -> VertexSet {
        let mut seen = vec![false; self.universe()];
        let mut stack: Vec<VertexId> = Vec::new();
        for v in to {
            if self.contains(v) && !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
        while let Some(v) = stack.pop() {
            for e in self.in_edges(v) {
                let u = self.edge(e).source;
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        (0..seen.len()).filter(|&v| seen[v]).collect()
    }
}

impl PartialEq for ParityGraph {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index
            && self.present == other.present
            && self.edges().map(|e| self.edge(e)).eq(other.edges().map(|e| other.edge(e)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    Eve,
    Adam,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Eve => Player::Adam,
            Player::Adam => Player::Eve,
        }
    }

    /// The player who wins when `p` is the dominant priority.
    pub fn of_priority(p: Priority) -> Player {
        if p.is_multiple_of(2) {
            Player::Eve
        } else {
            Player::Adam
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParityGame {
    pub graph: ParityGraph,
    owner: Vec<Player>,
}

impl ParityGame {
    pub fn new(graph: ParityGraph, owner: Vec<Player>) -> Result<Self, GameError> {
        if owner.len() != graph.universe() {
            return Err(GameError::OwnerMismatch {
                expected: graph.universe(),
                found: owner.len(),
            });
        }
        Ok(ParityGame { graph, owner })
    }

    /// The one-player game where Adam owns every vertex.
    pub fn adam_only(graph: ParityGraph) -> Self {
        let owner = vec![Player::Adam; graph.universe()];
        ParityGame { graph, owner }
    }

    pub fn owner(&self, v: VertexId) -> Player {
        self.owner[v]
    }

    pub fn owners(&self) -> &[Player] {
        &self.owner
    }

    pub fn restrict(&self, keep: &VertexSet) -> ParityGame {
        ParityGame {
            graph: self.graph.restrict(keep),
            owner: self.owner.clone(),
        }
    }
}

/// Positional strategy: one chosen edge per vertex of the strategizing player.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositionalStrategy {
    pub choice: BTreeMap<VertexId, EdgeId>,
}

impl PositionalStrategy {
    pub fn get(&self, v: VertexId) -> Option<EdgeId> {
        self.choice.get(&v).copied()
    }

    pub fn set(&mut self, v: VertexId, e: EdgeId) {
        self.choice.insert(v, e);
    }

    pub fn len(&self) -> usize {
        self.choice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.choice.is_empty()
    }
}

/// Finite witness of an infinite play: `stem` followed by `cycle` forever.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lasso {
    pub stem: Vec<EdgeId>,
    pub cycle: Vec<EdgeId>,
}

impl Lasso {
    /// Maximal priority on the cycle, or `None` if the lasso is malformed.
    pub fn cycle_max(&self, g: &ParityGraph) -> Option<Priority> {
        self.cycle.iter().map(|&e| g.edge(e).priority).max()
    }

    /// Checks that stem and cycle chain up and that the cycle closes.
    pub fn is_well_formed(&self, g: &ParityGraph) -> bool {
        let Some(&first) = self.cycle.first() else {
            return false;
        };
        let path: Vec<EdgeId> = self.stem.iter().chain(&self.cycle).copied().collect();
        let chained = path
            .windows(2)
            .all(|w| g.edge(w[0]).target == g.edge(w[1]).source);
        let closes = g.edge(*self.cycle.last().unwrap()).target == g.edge(first).source;
        chained && closes && path.iter().all(|&e| g.is_live(e))
    }
}
