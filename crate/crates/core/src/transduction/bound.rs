use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::decomposition::LabellingPair;
use crate::games::{EdgeId, Priority, VertexId};

/// A path split into `n+1` consecutive segments, each of which sees the
/// odd I-priority `odd_i` and the even J-priority `even_j` while staying at
/// or below both.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentedPath {
    pub odd_i: Priority,
    pub even_j: Priority,
    pub start: VertexId,
    pub edges: Vec<EdgeId>,
    /// Position in `edges` where each segment starts; `cuts[0] == 0`.
    pub cuts: Vec<usize>,
}

impl SegmentedPath {
    pub fn segments(&self) -> impl Iterator<Item = &[EdgeId]> {
        self.cuts.iter().enumerate().map(|(k, &from)| {
            let to = self.cuts.get(k + 1).copied().unwrap_or(self.edges.len());
            &self.edges[from..to]
        })
    }

    /// Independent check that this witnesses a violation of the `n`-bound.
    pub fn is_witness(&self, pair: &LabellingPair, n: usize) -> bool {
        let g = &pair.graph;
        let mut at = self.start;
        for &e in &self.edges {
            if !g.is_live(e) || g.edge(e).source != at {
                return false;
            }
            at = g.edge(e).target;
        }
        self.cuts.len() == n + 1
            && self.cuts.first() == Some(&0)
            && self.cuts.windows(2).all(|w| w[0] < w[1])
            && self.segments().all(|seg| {
                !seg.is_empty()
                    && seg.iter().all(|&e| pair.label_i[e] <= self.odd_i && pair.label_j[e] <= self.even_j)
                    && seg.iter().any(|&e| pair.label_i[e] == self.odd_i)
                    && seg.iter().any(|&e| pair.label_j[e] == self.even_j)
            })
    }
}

/// Searches for a path with `n+1` dominated segments for some odd `a` in I
/// and even `b` in J. Returns the first one found, in order of `a`, then `b`.
pub fn n_bound_check(pair: &LabellingPair, n: usize) -> Result<(), SegmentedPath> {
    let g = &pair.graph;
    let present = |pick: &dyn Fn(EdgeId) -> Priority, odd: bool| {
        let mut ps: Vec<Priority> = g.edges().map(pick).filter(|p| (p % 2 == 1) == odd).collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    };
    let odds = present(&|e| pair.label_i[e], true);
    let evens = present(&|e| pair.label_j[e], false);
    for &a in &odds {
        for &b in &evens {
            if let Some(path) = search(pair, n, a, b) {
                return Err(path);
            }
        }
    }
    Ok(())
}

pub fn is_n_bound(pair: &LabellingPair, n: usize) -> bool {
    n_bound_check(pair, n).is_ok()
}

/// BFS over `(v, seen a, seen b, completed segments)`, cutting as soon as
/// both have been seen.
fn search(pair: &LabellingPair, n: usize, a: Priority, b: Priority) -> Option<SegmentedPath> {
    let g = &pair.graph;
    let layers = n + 1;
    let id = |v: VertexId, fa: bool, fb: bool, c: usize| ((v * 2 + fa as usize) * 2 + fb as usize) * layers + c;
    let mut parent: Vec<Option<(usize, EdgeId)>> = vec![None; g.universe() * 4 * layers];
    let mut seen = vec![false; parent.len()];
    let mut queue = VecDeque::new();
    for v in g.vertices() {
        let s = id(v, false, false, 0);
        seen[s] = true;
        queue.push_back((v, false, false, 0usize));
    }
    while let Some((v, fa, fb, c)) = queue.pop_front() {
        let here = id(v, fa, fb, c);
        for e in g.out_edges(v) {
            let (pi, pj) = (pair.label_i[e], pair.label_j[e]);
            if pi > a || pj > b {
                continue;
            }
            let t = g.edge(e).target;
            let (na, nb) = (fa || pi == a, fb || pj == b);
            if na && nb && c + 1 == layers {
                return Some(rebuild(g.edge(e).source, here, e, &parent, layers, a, b));
            }
            let next = if na && nb { (t, false, false, c + 1) } else { (t, na, nb, c) };
            let nid = id(next.0, next.1, next.2, next.3);
            if !seen[nid] {
                seen[nid] = true;
                parent[nid] = Some((here, e));
                queue.push_back(next);
            }
        }
    }
    None
}

fn rebuild(
    _source: VertexId,
    last_state: usize,
    last_edge: EdgeId,
    parent: &[Option<(usize, EdgeId)>],
    layers: usize,
    a: Priority,
    b: Priority,
) -> SegmentedPath {
    // Walk back collecting edges; a cut sits after every edge whose target
    // state has cleared flags and a higher count.
    let mut edges = vec![last_edge];
    let mut ends = Vec::new();
    let mut state = last_state;
    while let Some((prev, e)) = parent[state] {
        if state % layers != prev % layers {
            ends.push(edges.len());
        }
        edges.push(e);
        state = prev;
    }
    let start = state / (4 * layers);
    edges.reverse();
    let total = edges.len();
    let mut cuts: Vec<usize> = ends.into_iter().map(|k| total - k).collect();
    cuts.push(0);
    cuts.sort_unstable();
    SegmentedPath {
        odd_i: a,
        even_j: b,
        start,
        edges,
        cuts,
    }
}
