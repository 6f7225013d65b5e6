use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use super::memory::{memory_product, LabellingPair, MemoryProduct};
use super::{build_ad, join_ads, AttractorDecomposition, DecompError};
use crate::games::{attractor_edges, attractor_vertices, find_odd_lasso, Index, ParityGraph, Priority, VertexSet};
use crate::transduction::n_bound_check;

pub const DEFAULT_STATE_CAP: usize = 200_000;

/// A decomposition of the I-labelled memory product, together with the
/// product it lives on.
#[derive(Clone, Debug)]
pub struct BoundedDecomposition {
    pub product: MemoryProduct,
    pub decomposition: AttractorDecomposition,
}

impl BoundedDecomposition {
    /// The product graph labelled by I; the decomposition is valid for it.
    pub fn graph(&self) -> ParityGraph {
        self.product.product.view_i().expect("labels were checked")
    }
}

/// From an `n`-bound pair `(I, J)` with both labellings even and `J = [1, 2j]`,
/// builds a decomposition of `G × memory` under `I` whose tree has at most
/// `n+1` children of full Strahler rank at every node.
pub fn ad_from_bounded_pair(
    pair: &LabellingPair,
    n: usize,
    j: Priority,
) -> Result<BoundedDecomposition, DecompError> {
    ad_from_bounded_pair_capped(pair, n, j, DEFAULT_STATE_CAP)
}

pub fn ad_from_bounded_pair_capped(
    pair: &LabellingPair,
    n: usize,
    j: Priority,
    cap: usize,
) -> Result<BoundedDecomposition, DecompError> {
    if pair.index_i.lo != 0 {
        return Err(DecompError::IndexShape(format!("I = {} must start at 0", pair.index_i)));
    }
    if j == 0 {
        return Err(DecompError::IndexShape("J must be [1, 2j] with j ≥ 1".into()));
    }
    let index_j = Index::new(1, 2 * j)?;
    let pair = LabellingPair::new(
        pair.graph.clone(),
        pair.label_i.clone(),
        pair.index_i,
        pair.label_j.clone(),
        index_j,
    )
    .map_err(|e| DecompError::IndexShape(format!("J labels must lie in {index_j}: {e}")))?;
    pair.graph.check_no_terminal()?;
    if let Some(l) = find_odd_lasso(&pair.view_i()?)? {
        return Err(DecompError::NotEven(l));
    }
    if let Some(l) = find_odd_lasso(&pair.view_j()?)? {
        return Err(DecompError::NotEvenJ(l));
    }
    n_bound_check(&pair, n).map_err(DecompError::NotBounded)?;

    let product = memory_product(&pair, cap)?;
    let gi = product.product.view_i()?;
    let gj = product.product.view_j()?;
    let top = gi.edges().map(|e| gi.edge(e).priority).max().unwrap_or(0);
    let i = top.div_ceil(2);
    let gi = gi.with_index(Index::new(0, 2 * i)?)?;
    let ctx = Ctx {
        product: &product,
        gj: &gj,
        n,
    };
    let decomposition = ctx.decompose(&gi, i, j)?;
    Ok(BoundedDecomposition {
        product,
        decomposition,
    })
}

struct Ctx<'a> {
    product: &'a MemoryProduct,
    gj: &'a ParityGraph,
    n: usize,
}

impl Ctx<'_> {
    /// `f` viewed through J, with the same vertices and edges.
    fn j_view(&self, f: &ParityGraph) -> ParityGraph {
        self.gj
            .restrict_mask(f.presence_mask())
            .filter_edges(|e, _| f.is_live(e))
    }

    fn star(&self, v: usize, i: Priority, j: Priority) -> bool {
        self.product.seen_j(v, 2 * i - 1, 2 * j)
    }

    /// Decomposes `f` (I-labels ≤ 2i, J-labels ≤ 2j) at level `2i`.
    fn decompose(&self, f: &ParityGraph, i: Priority, j: Priority) -> Result<AttractorDecomposition, DecompError> {
        if i == 0 {
            return Ok(AttractorDecomposition {
                level: 0,
                top_edges: f.edge_set(),
                top_attractor: f.vertex_set(),
                children: Vec::new(),
            });
        }
        if j == 0 {
            return if f.is_empty() {
                join_ads(f, 2 * i, Vec::new())
            } else {
                Err(DecompError::Internal("nonempty subgame with J exhausted".into()))
            };
        }
        let h = 2 * i;
        let top = f.edges().filter(|&e| f.edge(e).priority == h).collect();
        let a0 = attractor_edges(f, &top);
        let fh = f.without_edges(&top);
        let rest: VertexSet = f.vertex_set().difference(&a0).copied().collect();
        let dag = fh.restrict(&rest);
        let key = self.keys(&dag, i, j)?;

        let mut order: Vec<usize> = rest.iter().map(|&v| key[v]).collect();
        order.sort_unstable();
        order.dedup();
        let mut residual = rest.clone();
        let mut pieces = Vec::new();
        let mut take = |piece: VertexSet, sub, residual: &mut VertexSet| {
            let a = attractor_vertices(&fh.restrict(residual), &piece);
            residual.retain(|v| !a.contains(v));
            pieces.push((piece, sub));
        };
        for k in order {
            if k % 2 == 1 {
                let piece: VertexSet = residual.iter().copied().filter(|&v| key[v] == k).collect();
                if piece.is_empty() {
                    continue;
                }
                let sub = self.decompose(&fh.restrict(&piece), i - 1, j)?;
                take(piece, sub, &mut residual);
                continue;
            }
            loop {
                let class: VertexSet = residual.iter().copied().filter(|&v| key[v] == k).collect();
                if class.is_empty() {
                    break;
                }
                let gc = fh.restrict(&class);
                let odd = gc
                    .edges()
                    .filter(|&e| gc.edge(e).priority == h - 1)
                    .map(|e| gc.edge(e).source);
                let reach = gc.reaching(odd);
                let safe: VertexSet = class.difference(&reach).copied().collect();
                if safe.is_empty() {
                    return Err(DecompError::Internal(format!("class {k} has no safe vertex")));
                }
                let split = build_ad(&self.j_view(&fh.restrict(&safe)), 2 * j)?;
                if !split.top_attractor.is_empty() {
                    return Err(DecompError::Internal("J-top edge inside an unstarred class".into()));
                }
                for child in split.children {
                    let piece = child.subgame;
                    let sub = self.decompose(&fh.restrict(&piece), i - 1, j - 1)?;
                    take(piece, sub, &mut residual);
                }
            }
        }
        join_ads(f, h, pieces)
    }

    /// Starred vertices get `2κ+1`, the rest `2κ'+2` for the largest rank
    /// `κ'` of a starred vertex they reach (0 if none). Keys never increase
    /// along edges of `dag`.
    fn keys(&self, dag: &ParityGraph, i: Priority, j: Priority) -> Result<Vec<usize>, DecompError> {
        let u = dag.universe();
        let star: Vec<bool> = (0..u).map(|v| dag.contains(v) && self.star(v, i, j)).collect();

        // Rank: most starred arrivals after a 2i-1 edge along any path.
        let mut g2: DiGraph<(), u8> = DiGraph::new();
        let nodes: Vec<NodeIndex> = (0..2 * u).map(|_| g2.add_node(())).collect();
        for e in dag.edges() {
            let edge = dag.edge(e);
            let odd = edge.priority == 2 * i - 1;
            for b in 0..2 {
                let b2 = b == 1 || odd;
                if b2 && star[edge.target] {
                    g2.add_edge(nodes[2 * edge.source + b], nodes[2 * edge.target], 1);
                } else {
                    g2.add_edge(nodes[2 * edge.source + b], nodes[2 * edge.target + b2 as usize], 0);
                }
            }
        }
        let value = longest(&g2, |w| *w as usize).map_err(|_| {
            DecompError::Internal("a cycle repeats a dominated segment".into())
        })?;
        let rank: Vec<usize> = (0..u).map(|v| value[2 * v]).collect();
        if let Some(v) = (0..u).find(|&v| star[v] && rank[v] > self.n) {
            return Err(DecompError::RankOverflow(format!("vertex {v} has rank {}", rank[v])));
        }

        // Largest 2κ+2 over reachable starred vertices.
        let mut g1: DiGraph<usize, ()> = DiGraph::new();
        let single: Vec<NodeIndex> = (0..u)
            .map(|v| g1.add_node(if star[v] { 2 * rank[v] + 2 } else { 0 }))
            .collect();
        for e in dag.edges() {
            let edge = dag.edge(e);
            g1.add_edge(single[edge.source], single[edge.target], ());
        }
        let reach = reach_max(&g1);
        Ok((0..u)
            .map(|v| if star[v] { 2 * rank[v] + 1 } else { reach[v] })
            .collect())
    }
}

/// Longest path values from every node; a positive weight inside a strongly
/// connected component is an error.
fn longest<E>(g: &DiGraph<(), E>, weight: impl Fn(&E) -> usize) -> Result<Vec<usize>, ()> {
    use petgraph::visit::EdgeRef;
    let sccs = tarjan_scc(g);
    let mut comp = vec![0; g.node_count()];
    for (c, scc) in sccs.iter().enumerate() {
        for n in scc {
            comp[n.index()] = c;
        }
    }
    let mut value = vec![0usize; g.node_count()];
    // tarjan_scc lists components sinks first.
    for (c, scc) in sccs.iter().enumerate() {
        let mut best = 0;
        for &n in scc {
            for e in g.edges(n) {
                let w = weight(e.weight());
                if comp[e.target().index()] == c {
                    if w > 0 {
                        return Err(());
                    }
                } else {
                    best = best.max(w + value[e.target().index()]);
                }
            }
        }
        for &n in scc {
            value[n.index()] = best;
        }
    }
    Ok(value)
}

fn reach_max(g: &DiGraph<usize, ()>) -> Vec<usize> {
    use petgraph::visit::EdgeRef;
    let sccs = tarjan_scc(g);
    let mut value = vec![0usize; g.node_count()];
    for scc in &sccs {
        let mut best = scc.iter().map(|&n| g[n]).max().unwrap_or(0);
        for &n in scc {
            for e in g.edges(n) {
                best = best.max(value[e.target().index()]);
            }
        }
        for &n in scc {
            value[n.index()] = best;
        }
    }
    value
}
