use super::{AdChild, AttractorDecomposition, Clause, DecompError, Violation};
use crate::games::{
    attractor_edges, attractor_vertices, find_odd_lasso, EdgeSet, ParityGraph, Priority, VertexSet,
};
use crate::trees::OrderedTree;

fn top_edges(g: &ParityGraph, h: Priority) -> EdgeSet {
    g.edges().filter(|&e| g.edge(e).priority == h).collect()
}

pub(crate) fn check_level(g: &ParityGraph, h: Priority) -> Result<(), DecompError> {
    if h % 2 == 1 {
        return Err(DecompError::OddLevel(h));
    }
    match g.edges().find(|&e| g.edge(e).priority > h) {
        Some(e) => Err(DecompError::PriorityAboveLevel {
            edge: e,
            priority: g.edge(e).priority,
            level: h,
        }),
        None => Ok(()),
    }
}

/// Canonical decomposition at level `h`: `A_0` attracts the top edges, then
/// each `S_i` is the set of all residual vertices that cannot reach an
/// `h-1` edge, decomposed recursively at `h-2`.
pub fn build_ad(g: &ParityGraph, h: Priority) -> Result<AttractorDecomposition, DecompError> {
    check_level(g, h)?;
    if let Some(lasso) = find_odd_lasso(g)? {
        return Err(DecompError::NotEven(lasso));
    }
    Ok(construct(g, h))
}

fn construct(g: &ParityGraph, h: Priority) -> AttractorDecomposition {
    let top = top_edges(g, h);
    let a0 = attractor_edges(g, &top);
    let mut d = AttractorDecomposition {
        level: h,
        top_edges: top,
        top_attractor: a0,
        children: Vec::new(),
    };
    if h == 0 {
        return d;
    }
    let gh = g.without_edges(&d.top_edges);
    let mut residual: VertexSet = g.vertex_set().difference(&d.top_attractor).copied().collect();
    while !residual.is_empty() {
        let gi = gh.restrict(&residual);
        let odd_sources = gi
            .edges()
            .filter(|&e| gi.edge(e).priority == h - 1)
            .map(|e| gi.edge(e).source);
        let reach = gi.reaching(odd_sources);
        let s: VertexSet = residual.difference(&reach).copied().collect();
        assert!(!s.is_empty(), "even residual always has a safe vertex");
        let a = attractor_vertices(&gi, &s);
        let sub = construct(&gh.restrict(&s), h - 2);
        residual.retain(|v| !a.contains(v));
        d.children.push(AdChild {
            subgame: s,
            attractor: a,
            sub,
        });
    }
    d
}

/// Checks every clause of the definition, reporting the first violation.
pub fn validate_ad(g: &ParityGraph, d: &AttractorDecomposition) -> Result<(), Violation> {
    check(g, d, &mut Vec::new())
}

pub fn is_valid_ad(g: &ParityGraph, d: &AttractorDecomposition) -> bool {
    validate_ad(g, d).is_ok()
}

fn fail(path: &[usize], clause: Clause, vertex: Option<usize>, edge: Option<usize>) -> Violation {
    Violation {
        clause,
        path: path.to_vec(),
        vertex,
        edge,
    }
}

fn check(g: &ParityGraph, d: &AttractorDecomposition, path: &mut Vec<usize>) -> Result<(), Violation> {
    let h = d.level;
    if h % 2 == 1 {
        return Err(fail(path, Clause::Level, None, None));
    }
    if let Some(e) = g.edges().find(|&e| g.edge(e).priority > h) {
        return Err(fail(path, Clause::Level, None, Some(e)));
    }
    let top = top_edges(g, h);
    if let Some(&e) = top.symmetric_difference(&d.top_edges).next() {
        return Err(fail(path, Clause::TopEdges, None, Some(e)));
    }
    let a0 = attractor_edges(g, &top);
    if let Some(&v) = a0.symmetric_difference(&d.top_attractor).next() {
        return Err(fail(path, Clause::TopAttractor, Some(v), None));
    }
    if h == 0 && !d.children.is_empty() {
        return Err(fail(path, Clause::ChildBelowZero, None, None));
    }
    let gh = g.without_edges(&top);
    let mut residual: VertexSet = g.vertex_set().difference(&a0).copied().collect();
    for (k, c) in d.children.iter().enumerate() {
        path.push(k);
        if c.subgame.is_empty() {
            return Err(fail(path, Clause::EmptySubgame, None, None));
        }
        if let Some(&v) = c.subgame.iter().find(|v| !residual.contains(v)) {
            return Err(fail(path, Clause::SubgameOutsideResidual, Some(v), None));
        }
        let gi = gh.restrict(&residual);
        let sub = gh.restrict(&c.subgame);
        if let Some(e) = sub.edges().find(|&e| sub.edge(e).priority + 2 > h) {
            return Err(fail(path, Clause::SubgamePriority, None, Some(e)));
        }
        if let Some(&v) = sub.terminal_vertices().iter().next() {
            return Err(fail(path, Clause::SubgameTerminal, Some(v), None));
        }
        for &v in &c.subgame {
            if let Some(e) = gi.out_edges(v).find(|&e| !c.subgame.contains(&gi.edge(e).target)) {
                return Err(fail(path, Clause::SubgameClosure, Some(v), Some(e)));
            }
        }
        let a = attractor_vertices(&gi, &c.subgame);
        if let Some(&v) = a.symmetric_difference(&c.attractor).next() {
            return Err(fail(path, Clause::ChildAttractor, Some(v), None));
        }
        if c.sub.level + 2 != h {
            return Err(fail(path, Clause::ChildLevel, None, None));
        }
        check(&sub, &c.sub, path)?;
        residual.retain(|v| !a.contains(v));
        path.pop();
    }
    if let Some(&v) = residual.iter().next() {
        return Err(fail(path, Clause::Coverage, Some(v), None));
    }
    Ok(())
}

/// For `0 < i < j`, `A_j` is unreachable from `A_i` inside the union of
/// the child attractors, recursively. Paths are taken in `G∖H`: edges of
/// top priority may legitimately move rightwards.
pub fn ad_reachability_check(g: &ParityGraph, d: &AttractorDecomposition) -> bool {
    let top = top_edges(g, d.level);
    let gh = g.without_edges(&top);
    let mut owner = vec![usize::MAX; g.universe()];
    let mut union = VertexSet::new();
    for (k, c) in d.children.iter().enumerate() {
        for &v in &c.attractor {
            owner[v] = k;
            union.insert(v);
        }
    }
    let inner = gh.restrict(&union);
    for (k, c) in d.children.iter().enumerate() {
        let reach = inner.reachable_from(c.attractor.iter().copied());
        if reach.iter().any(|&v| owner[v] != usize::MAX && owner[v] > k) {
            return false;
        }
    }
    d.children
        .iter()
        .all(|c| ad_reachability_check(&gh.restrict(&c.subgame), &c.sub))
}

/// For `i > j`, every path from `S_i` to `S_j` in `G∖H` sees priority
/// `h-1`, recursively.
pub fn is_tight(g: &ParityGraph, d: &AttractorDecomposition) -> bool {
    let h = d.level;
    if h == 0 {
        return true;
    }
    let top = top_edges(g, h);
    let gh = g.without_edges(&top);
    let low = gh.filter_edges(|_, e| e.priority + 2 <= h);
    let mut owner = vec![usize::MAX; g.universe()];
    for (k, c) in d.children.iter().enumerate() {
        for &v in &c.subgame {
            owner[v] = k;
        }
    }
    for (k, c) in d.children.iter().enumerate() {
        let reach = low.reachable_from(c.subgame.iter().copied());
        if reach.iter().any(|&v| owner[v] < k) {
            return false;
        }
    }
    d.children
        .iter()
        .all(|c| is_tight(&gh.restrict(&c.subgame), &c.sub))
}

pub fn tree_shape(d: &AttractorDecomposition) -> OrderedTree {
    OrderedTree::node(d.children.iter().map(|c| tree_shape(&c.sub)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_top_loop() {
        let g = ParityGraph::from_edges(1, [(0, 0, 2)]).unwrap();
        let d = build_ad(&g, 2).unwrap();
        assert_eq!(d.top_edges, [0].into());
        assert_eq!(d.top_attractor, [0].into());
        assert!(d.children.is_empty());
        assert_eq!(tree_shape(&d), OrderedTree::leaf());
    }

    #[test]
    fn priority_zero_base_case() {
        let g = ParityGraph::from_edges(2, [(0, 1, 0), (1, 0, 0)]).unwrap();
        let d = build_ad(&g, 0).unwrap();
        assert_eq!(d.level, 0);
        assert_eq!(d.top_attractor, g.vertex_set());
        assert!(validate_ad(&g, &d).is_ok());
    }

    fn two_children() -> ParityGraph {
        // 0 loops at 0, 1 loops at 0, 1 -> 0 with priority 1.
        ParityGraph::from_edges(2, [(0, 0, 0), (1, 1, 0), (1, 0, 1)]).unwrap()
    }

    #[test]
    fn canonical_two_children() {
        let g = two_children();
        let d = build_ad(&g, 2).unwrap();
        assert_eq!(d.children.len(), 2);
        assert_eq!(d.children[0].subgame, [0].into());
        assert_eq!(d.children[1].subgame, [1].into());
        assert!(validate_ad(&g, &d).is_ok());
        assert!(ad_reachability_check(&g, &d));
        assert!(is_tight(&g, &d));
        assert_eq!(tree_shape(&d).to_string(), "(()())");
    }

    #[test]
    fn odd_graph_rejected() {
        let g = ParityGraph::from_edges(1, [(0, 0, 1)]).unwrap();
        assert!(matches!(build_ad(&g, 2), Err(DecompError::NotEven(_))));
        assert!(matches!(build_ad(&g, 3), Err(DecompError::OddLevel(3))));
        assert!(matches!(build_ad(&g, 0), Err(DecompError::PriorityAboveLevel { .. })));
    }

    #[test]
    fn subgame_with_odd_edge_violates() {
        let g = two_children();
        let mut d = build_ad(&g, 2).unwrap();
        let merged: VertexSet = [0, 1].into();
        d.children = vec![AdChild {
            subgame: merged.clone(),
            attractor: merged,
            sub: d.children[0].sub.clone(),
        }];
        assert_eq!(validate_ad(&g, &d).unwrap_err().clause, Clause::SubgamePriority);
    }

    #[test]
    fn missing_vertex_violates_coverage() {
        let g = ParityGraph::from_edges(3, [(0, 0, 0), (1, 1, 0), (1, 0, 1), (2, 2, 2)]).unwrap();
        let mut d = build_ad(&g, 2).unwrap();
        d.children.pop();
        assert_eq!(validate_ad(&g, &d).unwrap_err().clause, Clause::Coverage);
    }

    #[test]
    fn back_edge_breaks_tightness() {
        // Two safe loops; 1 -> 0 by priority 0 is a back edge below h-1.
        let g = ParityGraph::new(
            2,
            [(0, 0, 0), (1, 1, 0), (1, 0, 0)],
            crate::games::Index::new(0, 2).unwrap(),
        )
        .unwrap();
        let both: VertexSet = [0, 1].into();
        let d = AttractorDecomposition {
            level: 2,
            top_edges: EdgeSet::new(),
            top_attractor: VertexSet::new(),
            children: vec![AdChild {
                subgame: both.clone(),
                attractor: both.clone(),
                sub: build_ad(&g.restrict(&both), 0).unwrap(),
            }],
        };
        assert!(validate_ad(&g, &d).is_ok());
        assert!(is_tight(&g, &d));
        let split = AttractorDecomposition {
            children: vec![
                AdChild {
                    subgame: [0].into(),
                    attractor: [0].into(),
                    sub: build_ad(&g.restrict(&[0].into()), 0).unwrap(),
                },
                AdChild {
                    subgame: [1].into(),
                    attractor: [1].into(),
                    sub: build_ad(&g.restrict(&[1].into()), 0).unwrap(),
                },
            ],
            ..d
        };
        assert!(validate_ad(&g, &split).is_ok());
        assert!(!is_tight(&g, &split));
    }
}
