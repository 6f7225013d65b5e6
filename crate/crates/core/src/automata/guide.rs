use std::collections::{HashMap, VecDeque};

use super::game::accepting_run;
use super::{AutomataError, GuidingFunction, Npta, RegularTree, RunGraph, State};
use crate::decomposition::LabellingPair;
use crate::games::VertexId;
use crate::transduction::n_bound_check;

/// A run of A built by following a run of B through a guide. Vertex `v`
/// shadows vertex `guide_vertex[v]` of the run of B.
#[derive(Clone, Debug, PartialEq)]
pub struct GuidedRun {
    pub run: RunGraph,
    pub guide_vertex: Vec<VertexId>,
}

/// Propagates A's state from its initial state down the run `run_b` of B,
/// firing `g(p, δ_B)` wherever B fires `δ_B` and A is in `p`.
pub fn guided_run(
    g: &GuidingFunction,
    a: &Npta,
    b: &Npta,
    t: &RegularTree,
    run_b: &RunGraph,
) -> Result<GuidedRun, AutomataError> {
    let mut id: HashMap<(VertexId, State), VertexId> = HashMap::new();
    let mut keys = vec![(run_b.root, a.initial)];
    id.insert(keys[0], 0);
    let mut queue = VecDeque::from([0]);
    let (mut transition, mut succ) = (vec![], vec![]);
    while let Some(x) = queue.pop_front() {
        let (vb, p) = keys[x];
        let db = run_b.transition[vb];
        let da = *g
            .table
            .get(&(p, db))
            .ok_or(AutomataError::IncompatibleGuide { state: p, transition: db })?;
        let (ta, tb) = (&a.transitions[da], &b.transitions[db]);
        if ta.state != p || ta.letter != tb.letter || tb.letter != t.labels[run_b.vertices[vb].0] {
            return Err(AutomataError::IncompatibleGuide { state: p, transition: db });
        }
        transition.push(da);
        let mut out = [0; 2];
        for (d, q) in [ta.left, ta.right].into_iter().enumerate() {
            let key = (run_b.graph.edge(2 * vb + d).target, q);
            out[d] = *id.entry(key).or_insert_with(|| {
                keys.push(key);
                queue.push_back(keys.len() - 1);
                keys.len() - 1
            });
        }
        succ.push(out);
    }
    let vertices = keys.iter().map(|&(vb, p)| (run_b.vertices[vb].0, p)).collect();
    let run = RunGraph::build(vertices, transition, succ, a)?;
    Ok(GuidedRun {
        run,
        guide_vertex: keys.iter().map(|k| k.0).collect(),
    })
}

/// The guided run of A labelled by A's priorities (I) and by the
/// priorities of the run of B it shadows (J).
pub fn guided_pair(
    a: &Npta,
    b: &Npta,
    g: &GuidingFunction,
    t: &RegularTree,
) -> Result<(LabellingPair, GuidedRun), AutomataError> {
    let run_b = accepting_run(b, t)?;
    let guided = guided_run(g, a, b, t, &run_b)?;
    let label_i = guided.run.priorities();
    let label_j = (0..label_i.len())
        .map(|e| run_b.graph.edge(2 * guided.guide_vertex[e / 2] + e % 2).priority)
        .collect();
    let pair = LabellingPair::new(guided.run.graph.clone(), label_i, a.index, label_j, b.index)?;
    Ok((pair, guided))
}

/// Whether the guided run's labelling is `|A|·|B| + 1`-bound by the
/// accepting run of B it follows.
pub fn guided_pair_bound_check(
    a: &Npta,
    b: &Npta,
    g: &GuidingFunction,
    t: &RegularTree,
) -> Result<bool, AutomataError> {
    let (pair, _) = guided_pair(a, b, g, t)?;
    Ok(n_bound_check(&pair, a.states * b.states + 1).is_ok())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{guided_suite, membership};
    use crate::games::is_even;

    #[test]
    fn suite_guides_preserve_acceptance() {
        for tr in guided_suite() {
            for t in &tr.trees {
                assert!(membership(&tr.b, t).unwrap(), "{}", tr.name);
                let (pair, guided) = guided_pair(&tr.a, &tr.b, &tr.guide, t).unwrap();
                assert_eq!(is_even(&guided.run.graph).unwrap(), tr.preserving, "{}", tr.name);
                assert!(is_even(&pair.view_j().unwrap()).unwrap());
                assert_eq!(guided_pair_bound_check(&tr.a, &tr.b, &tr.guide, t).unwrap(), tr.preserving, "{}", tr.name);
            }
        }
    }
}
