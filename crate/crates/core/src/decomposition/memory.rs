use std::collections::{HashMap, VecDeque};

use super::DecompError;
use crate::games::{EdgeId, GameError, Index, ParityGraph, Priority, VertexId, VertexSet};

/// Two edge labellings of one graph. The graph's own priorities are
/// ignored; `label_i[e]` and `label_j[e]` are indexed by edge id.
#[derive(Clone, Debug, PartialEq)]
pub struct LabellingPair {
    pub graph: ParityGraph,
    pub label_i: Vec<Priority>,
    pub index_i: Index,
    pub label_j: Vec<Priority>,
    pub index_j: Index,
}

impl LabellingPair {
    pub fn new(
        graph: ParityGraph,
        label_i: Vec<Priority>,
        index_i: Index,
        label_j: Vec<Priority>,
        index_j: Index,
    ) -> Result<Self, GameError> {
        let slots = graph.edge_slots();
        for found in [label_i.len(), label_j.len()] {
            if found != slots {
                return Err(GameError::LabelLength {
                    expected: slots,
                    found,
                });
            }
        }
        let pair = LabellingPair {
            graph,
            label_i,
            index_i,
            label_j,
            index_j,
        };
        pair.view_i()?;
        pair.view_j()?;
        Ok(pair)
    }

    /// The graph labelled by `label_i`.
    pub fn view_i(&self) -> Result<ParityGraph, GameError> {
        self.graph.with_priorities(&self.label_i, self.index_i)
    }

    pub fn view_j(&self) -> Result<ParityGraph, GameError> {
        self.graph.with_priorities(&self.label_j, self.index_j)
    }

    pub fn restrict(&self, keep: &VertexSet) -> LabellingPair {
        LabellingPair {
            graph: self.graph.restrict(keep),
            ..self.clone()
        }
    }
}

/// Per pair `(a, b)` of an odd I-priority and an even J-priority, bit `k`
/// of `seen_j` records "J ≥ b seen since the last I ≥ a", and `seen_i` the
/// converse.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Memory {
    pub seen_j: u64,
    pub seen_i: u64,
}

#[derive(Clone, Debug)]
pub struct MemoryProduct {
    pub base: LabellingPair,
    /// The product graph with both labellings lifted edge-wise.
    pub product: LabellingPair,
    pub states: Vec<(VertexId, Memory)>,
    /// Base edge of every product edge.
    pub edge_origin: Vec<EdgeId>,
    pub odd_i: Vec<Priority>,
    pub even_j: Vec<Priority>,
    initial: HashMap<VertexId, VertexId>,
}

impl MemoryProduct {
    fn pair_index(&self, a: Priority, b: Priority) -> Option<usize> {
        let ia = self.odd_i.iter().position(|&x| x == a)?;
        let ib = self.even_j.iter().position(|&x| x == b)?;
        Some(ia * self.even_j.len() + ib)
    }

    /// Whether `b` was seen in J since the last `a` in I, on the way to
    /// product vertex `s`.
    pub fn seen_j(&self, s: VertexId, a: Priority, b: Priority) -> bool {
        self.pair_index(a, b)
            .is_some_and(|k| self.states[s].1.seen_j >> k & 1 == 1)
    }

    pub fn seen_i(&self, s: VertexId, a: Priority, b: Priority) -> bool {
        self.pair_index(a, b)
            .is_some_and(|k| self.states[s].1.seen_i >> k & 1 == 1)
    }

    /// Product vertex of base vertex `v` with all flags cleared.
    pub fn initial(&self, v: VertexId) -> Option<VertexId> {
        self.initial.get(&v).copied()
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }
}

fn step(mem: Memory, pairs: &[(Priority, Priority)], pi: Priority, pj: Priority) -> Memory {
    let mut out = mem;
    for (k, &(a, b)) in pairs.iter().enumerate() {
        let bit = 1u64 << k;
        let hi = pi >= a;
        let hj = pj >= b;
        let sj = if hi { hj } else { mem.seen_j & bit != 0 || hj };
        let si = if hj { hi } else { mem.seen_i & bit != 0 || hi };
        out.seen_j = (out.seen_j & !bit) | if sj { bit } else { 0 };
        out.seen_i = (out.seen_i & !bit) | if si { bit } else { 0 };
    }
    out
}

/// The part of `base × memory` reachable from every base vertex with all
/// flags cleared, explored breadth-first in id order.
pub fn memory_product(pair: &LabellingPair, cap: usize) -> Result<MemoryProduct, DecompError> {
    let odd_i: Vec<Priority> = pair.index_i.odds().collect();
    let even_j: Vec<Priority> = pair.index_j.evens().collect();
    let pairs: Vec<(Priority, Priority)> = odd_i
        .iter()
        .flat_map(|&a| even_j.iter().map(move |&b| (a, b)))
        .collect();
    if pairs.len() > 64 {
        return Err(DecompError::IndexShape(format!(
            "{} × {} needs more than 64 memory flags",
            pair.index_i, pair.index_j
        )));
    }
    let g = &pair.graph;
    let mut ids: HashMap<(VertexId, Memory), VertexId> = HashMap::new();
    let mut states = Vec::new();
    let mut queue = VecDeque::new();
    let mut initial = HashMap::new();
    let mut intern = |key: (VertexId, Memory),
                      states: &mut Vec<(VertexId, Memory)>,
                      queue: &mut VecDeque<VertexId>|
     -> Result<VertexId, DecompError> {
        if let Some(&id) = ids.get(&key) {
            return Ok(id);
        }
        if states.len() >= cap {
            return Err(DecompError::StateExplosion { cap });
        }
        let id = states.len();
        ids.insert(key, id);
        states.push(key);
        queue.push_back(id);
        Ok(id)
    };
    for v in g.vertices() {
        let id = intern((v, Memory::default()), &mut states, &mut queue)?;
        initial.insert(v, id);
    }
    let mut edges = Vec::new();
    let mut origin = Vec::new();
    while let Some(s) = queue.pop_front() {
        let (v, mem) = states[s];
        for e in g.out_edges(v) {
            let t = g.edge(e).target;
            let next = step(mem, &pairs, pair.label_i[e], pair.label_j[e]);
            let id = intern((t, next), &mut states, &mut queue)?;
            edges.push((s, id));
            origin.push(e);
        }
    }
    let label_i: Vec<Priority> = origin.iter().map(|&e| pair.label_i[e]).collect();
    let label_j: Vec<Priority> = origin.iter().map(|&e| pair.label_j[e]).collect();
    let graph = ParityGraph::new(
        states.len(),
        edges.iter().zip(&label_i).map(|(&(s, t), &p)| (s, t, p)),
        pair.index_i,
    )?;
    let product = LabellingPair::new(graph, label_i, pair.index_i, label_j, pair.index_j)?;
    Ok(MemoryProduct {
        base: pair.clone(),
        product,
        states,
        edge_origin: origin,
        odd_i,
        even_j,
        initial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(edges: &[(usize, usize, Priority, Priority)], n: usize, i: Index, j: Index) -> LabellingPair {
        let g = ParityGraph::from_edges(n, edges.iter().map(|&(s, t, _, _)| (s, t, 0))).unwrap();
        LabellingPair::new(
            g,
            edges.iter().map(|e| e.2).collect(),
            i,
            edges.iter().map(|e| e.3).collect(),
            j,
        )
        .unwrap()
    }

    #[test]
    fn trivial_memory_is_isomorphic() {
        let p = pair(&[(0, 1, 0, 1), (1, 0, 0, 2)], 2, Index::new(0, 0).unwrap(), Index::new(1, 2).unwrap());
        let m = memory_product(&p, 100).unwrap();
        assert_eq!(m.state_count(), 2);
        assert_eq!(m.product.graph.edge_count(), 2);
    }

    #[test]
    fn one_flag_pair_at_most_four_states() {
        let p = pair(
            &[(0, 0, 1, 1), (0, 0, 0, 2), (0, 0, 1, 2), (0, 0, 2, 1)],
            1,
            Index::new(0, 2).unwrap(),
            Index::new(1, 2).unwrap(),
        );
        let m = memory_product(&p, 100).unwrap();
        assert!(m.state_count() <= 4);
        let after_j = m.states.iter().position(|s| s.1.seen_j == 1).unwrap();
        assert!(m.seen_j(after_j, 1, 2));
    }

    #[test]
    fn flags_follow_the_last_occurrence() {
        let pairs = [(1, 2)];
        let m0 = Memory::default();
        let m1 = step(m0, &pairs, 0, 2);
        assert_eq!(m1.seen_j, 1);
        let m2 = step(m1, &pairs, 1, 1);
        assert_eq!((m2.seen_j, m2.seen_i), (0, 1));
        let m3 = step(m2, &pairs, 0, 2);
        assert_eq!((m3.seen_j, m3.seen_i), (1, 0));
    }

    #[test]
    fn cap_is_enforced() {
        let p = pair(&[(0, 0, 1, 2), (0, 0, 0, 1)], 1, Index::new(0, 1).unwrap(), Index::new(1, 2).unwrap());
        assert!(matches!(memory_product(&p, 1), Err(DecompError::StateExplosion { cap: 1 })));
    }
}
