use super::ad::check_level;
use super::{validate_ad, AdChild, AttractorDecomposition, Clause, DecompError, Violation};
use crate::games::{attractor_edges, attractor_vertices, EdgeSet, ParityGraph, Priority, VertexSet};

/// Splits the attractor of a disjoint union into the successive attractors
/// `A_k = attr(S_k, g|V∖(A_1 ∪ … ∪ A_{k-1}))`.
pub fn attr_partition(g: &ParityGraph, parts: &[VertexSet]) -> Result<Vec<VertexSet>, DecompError> {
    let mut seen = VertexSet::new();
    for p in parts {
        for &v in p {
            if !seen.insert(v) {
                return Err(DecompError::OverlappingParts(v));
            }
        }
    }
    let mut residual = g.vertex_set();
    let mut out = Vec::with_capacity(parts.len());
    for p in parts {
        let a = attractor_vertices(&g.restrict(&residual), p);
        residual.retain(|v| !a.contains(v));
        out.push(a);
    }
    Ok(out)
}

/// Assembles a level-`h` decomposition of `g` from ordered subgames and
/// their level-`h-2` decompositions, dropping empty subgames. Each
/// hypothesis is checked and reported as the clause it would break.
pub fn join_ads(
    g: &ParityGraph,
    h: Priority,
    pieces: Vec<(VertexSet, AttractorDecomposition)>,
) -> Result<AttractorDecomposition, DecompError> {
    check_level(g, h)?;
    let violated = |clause, path: usize, vertex, edge| {
        DecompError::HypothesisViolated(Violation {
            clause,
            path: vec![path],
            vertex,
            edge,
        })
    };
    let top: EdgeSet = g.edges().filter(|&e| g.edge(e).priority == h).collect();
    let a0 = attractor_edges(g, &top);
    let gh = g.without_edges(&top);
    let mut residual: VertexSet = g.vertex_set().difference(&a0).copied().collect();
    let mut children = Vec::new();
    for (k, (s, sub)) in pieces.into_iter().enumerate() {
        if s.is_empty() {
            continue;
        }
        if let Some(&v) = s.iter().find(|v| !residual.contains(v)) {
            return Err(violated(Clause::SubgameOutsideResidual, k, Some(v), None));
        }
        let gi = gh.restrict(&residual);
        for &v in &s {
            if let Some(e) = gi.out_edges(v).find(|&e| !s.contains(&gi.edge(e).target)) {
                return Err(violated(Clause::SubgameClosure, k, Some(v), Some(e)));
            }
        }
        if sub.level + 2 != h {
            return Err(violated(Clause::ChildLevel, k, None, None));
        }
        if let Err(mut inner) = validate_ad(&gh.restrict(&s), &sub) {
            inner.path.insert(0, k);
            return Err(DecompError::HypothesisViolated(inner));
        }
        let a = attractor_vertices(&gi, &s);
        residual.retain(|v| !a.contains(v));
        children.push(AdChild {
            subgame: s,
            attractor: a,
            sub,
        });
    }
    if let Some(&v) = residual.iter().next() {
        return Err(violated(Clause::Coverage, children.len(), Some(v), None));
    }
    Ok(AttractorDecomposition {
        level: h,
        top_edges: top,
        top_attractor: a0,
        children,
    })
}

/// The `(S_i, D_i)` pieces of a decomposition, in order.
pub fn dismantle(d: &AttractorDecomposition) -> Vec<(VertexSet, AttractorDecomposition)> {
    d.children
        .iter()
        .map(|c| (c.subgame.clone(), c.sub.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::build_ad;

    fn chain() -> ParityGraph {
        // Safe loops at 0 and 1, 1 -> 0 with priority 1, 2 -> 1 with 1, loop at 2.
        ParityGraph::from_edges(3, [(0, 0, 0), (1, 1, 0), (1, 0, 1), (2, 1, 1), (2, 2, 0)]).unwrap()
    }

    #[test]
    fn single_part_is_plain_attractor() {
        let g = chain();
        let parts = attr_partition(&g, &[[0].into()]).unwrap();
        assert_eq!(parts, vec![attractor_vertices(&g, &[0].into())]);
    }

    #[test]
    fn separate_components() {
        let g = ParityGraph::from_edges(2, [(0, 0, 0), (1, 1, 0)]).unwrap();
        let parts = attr_partition(&g, &[[0].into(), [1].into()]).unwrap();
        assert_eq!(parts, vec![[0].into(), [1].into()]);
    }

    #[test]
    fn overlapping_rejected() {
        let g = chain();
        assert_eq!(
            attr_partition(&g, &[[0, 1].into(), [1].into()]),
            Err(DecompError::OverlappingParts(1))
        );
    }

    #[test]
    fn one_piece_covering_everything() {
        let g = ParityGraph::from_edges(2, [(0, 1, 0), (1, 0, 0)]).unwrap();
        let g = g.with_index(crate::games::Index::new(0, 2).unwrap()).unwrap();
        let sub = build_ad(&g, 0).unwrap();
        let d = join_ads(&g, 2, vec![(g.vertex_set(), sub)]).unwrap();
        assert_eq!(d.children.len(), 1);
        assert!(validate_ad(&g, &d).is_ok());
    }

    #[test]
    fn round_trip_and_coverage_failure() {
        let g = chain();
        let d = build_ad(&g, 2).unwrap();
        assert_eq!(d.children.len(), 3);
        let joined = join_ads(&g, 2, dismantle(&d)).unwrap();
        assert_eq!(joined, d);
        let mut pieces = dismantle(&d);
        pieces.pop();
        let err = join_ads(&g, 2, pieces).unwrap_err();
        assert!(matches!(err, DecompError::HypothesisViolated(Violation { clause: Clause::Coverage, .. })));
    }
}
