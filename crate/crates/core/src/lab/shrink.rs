use crate::games::{EdgeSet, ParityGraph, VertexSet};

/// Greedily deletes vertices, then edges, as long as the result has no
/// terminal vertex and still satisfies `fails`. Returns a compacted graph.
pub fn shrink_graph(g: &ParityGraph, mut fails: impl FnMut(&ParityGraph) -> bool) -> ParityGraph {
    let mut cur = g.clone();
    loop {
        let mut changed = false;
        for v in cur.vertex_set() {
            let cand = cur.remove_vertices(&VertexSet::from([v]));
            if !cand.is_empty() && cand.terminal_vertices().is_empty() && fails(&cand) {
                cur = cand;
                changed = true;
            }
        }
        for e in cur.edge_set() {
            let cand = cur.without_edges(&EdgeSet::from([e]));
            if cand.terminal_vertices().is_empty() && fails(&cand) {
                cur = cand;
                changed = true;
            }
        }
        if !changed {
            return cur.compact().0;
        }
    }
}
