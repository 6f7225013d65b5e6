use super::{AutomataError, Npta, RegularTree, State};
use crate::games::{solve, Index, ParityGame, ParityGraph, Player, PositionalStrategy, Priority, VertexId};

/// Decoded vertex of an acceptance game.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AgNode {
    /// Eve picks a transition at tree node `node` in `state`.
    Choose { node: usize, state: State },
    /// Adam picks a direction after `transition` was fired at `node`.
    Branch { node: usize, transition: usize },
}

#[derive(Clone, Debug)]
pub struct AcceptanceGame {
    pub game: ParityGame,
    pub nodes: Vec<AgNode>,
    pub initial: VertexId,
}

impl AcceptanceGame {
    pub fn choose(&self, node: usize, state: State, states: usize) -> VertexId {
        node * states + state
    }
}

fn check_letters(a: &Npta, t: &RegularTree) -> Result<(), AutomataError> {
    match t.labels.iter().find(|&&l| l >= a.alphabet) {
        Some(&letter) => Err(AutomataError::AlphabetMismatch {
            letter,
            alphabet: a.alphabet,
        }),
        None => Ok(()),
    }
}

/// Eve owns `(node, state)` and moves to `(node, δ)` for every matching
/// transition with the least priority of the index; Adam then moves to
/// `(succ_d(node), δ_d)` with priority `Ω_d(δ)`.
pub fn acceptance_game(a: &Npta, t: &RegularTree) -> Result<AcceptanceGame, AutomataError> {
    check_letters(a, t)?;
    let (m, k) = (a.states, a.transitions.len());
    let choose = |u: usize, q: State| u * m + q;
    let branch = |u: usize, d: usize| t.len() * m + u * k + d;
    let mut nodes = Vec::with_capacity(t.len() * (m + k));
    for u in 0..t.len() {
        nodes.extend((0..m).map(|state| AgNode::Choose { node: u, state }));
    }
    for u in 0..t.len() {
        nodes.extend((0..k).map(|transition| AgNode::Branch { node: u, transition }));
    }
    let mut edges = Vec::new();
    for u in 0..t.len() {
        for q in 0..m {
            for d in a.from(q, t.labels[u]) {
                edges.push((choose(u, q), branch(u, d), a.index.lo));
            }
        }
        for (d, tr) in a.transitions.iter().enumerate() {
            let [l, r] = t.succ[u];
            edges.push((branch(u, d), choose(l, tr.left), tr.priorities.0));
            edges.push((branch(u, d), choose(r, tr.right), tr.priorities.1));
        }
    }
    let graph = ParityGraph::new(nodes.len(), edges, a.index)?;
    let owner = nodes
        .iter()
        .map(|n| match n {
            AgNode::Choose { .. } => Player::Eve,
            AgNode::Branch { .. } => Player::Adam,
        })
        .collect();
    Ok(AcceptanceGame {
        game: ParityGame::new(graph, owner)?,
        nodes,
        initial: choose(t.root, a.initial),
    })
}

/// Whether `a` accepts the unfolding of `t`.
pub fn membership(a: &Npta, t: &RegularTree) -> Result<bool, AutomataError> {
    let ag = acceptance_game(a, t)?;
    Ok(solve(&ag.game)?.eve_region.contains(&ag.initial))
}

/// A run folded onto `(node, state)` pairs. Vertex `v` fires
/// `transition[v]`; its left and right edges are `2v` and `2v + 1`,
/// labelled with the transition's priorities.
#[derive(Clone, Debug, PartialEq)]
pub struct RunGraph {
    pub graph: ParityGraph,
    pub vertices: Vec<(usize, State)>,
    pub transition: Vec<usize>,
    pub root: VertexId,
}

impl RunGraph {
    pub(crate) fn build(
        vertices: Vec<(usize, State)>,
        transition: Vec<usize>,
        succ: Vec<[VertexId; 2]>,
        a: &Npta,
    ) -> Result<Self, AutomataError> {
        let edges = succ.iter().enumerate().flat_map(|(v, s)| {
            let p = a.transitions[transition[v]].priorities;
            [(v, s[0], p.0), (v, s[1], p.1)]
        });
        let graph = ParityGraph::new(vertices.len(), edges.collect::<Vec<_>>(), a.index)?;
        Ok(RunGraph {
            graph,
            vertices,
            transition,
            root: 0,
        })
    }

    pub fn priorities(&self) -> Vec<Priority> {
        self.graph.edges().map(|e| self.graph.edge(e).priority).collect()
    }

    pub fn index(&self) -> Index {
        self.graph.index()
    }
}

/// The run that follows Eve's positional strategy `sigma` in the acceptance
/// game, restricted to what is reachable from the root.
pub fn run_graph(a: &Npta, t: &RegularTree, sigma: &PositionalStrategy) -> Result<RunGraph, AutomataError> {
    let ag = acceptance_game(a, t)?;
    let g = &ag.game.graph;
    let mut id = std::collections::HashMap::new();
    let mut vertices = vec![];
    let mut transition = vec![];
    let mut succ = vec![];
    id.insert(ag.initial, 0);
    let mut queue = std::collections::VecDeque::from([ag.initial]);
    vertices.push(decode(&ag, ag.initial));
    while let Some(x) = queue.pop_front() {
        let e = sigma.get(x).ok_or(AutomataError::UndefinedChoice(x))?;
        if !g.is_live(e) || g.edge(e).source != x {
            return Err(AutomataError::UndefinedChoice(x));
        }
        let b = g.edge(e).target;
        let AgNode::Branch { transition: d, .. } = ag.nodes[b] else {
            unreachable!("Eve moves to branch vertices")
        };
        transition.push(d);
        let mut out = [0; 2];
        for (slot, f) in g.out_edges(b).enumerate() {
            let y = g.edge(f).target;
            out[slot] = *id.entry(y).or_insert_with(|| {
                vertices.push(decode(&ag, y));
                queue.push_back(y);
                vertices.len() - 1
            });
        }
        succ.push(out);
    }
    RunGraph::build(vertices, transition, succ, a)
}

fn decode(ag: &AcceptanceGame, v: VertexId) -> (usize, State) {
    match ag.nodes[v] {
        AgNode::Choose { node, state } => (node, state),
        AgNode::Branch { .. } => unreachable!("runs visit Eve vertices only"),
    }
}

/// An accepting run of `a` on `t`, if there is one.
pub fn accepting_run(a: &Npta, t: &RegularTree) -> Result<RunGraph, AutomataError> {
    let ag = acceptance_game(a, t)?;
    let sol = solve(&ag.game)?;
    if !sol.eve_region.contains(&ag.initial) {
        return Err(AutomataError::NoAcceptingRun);
    }
    run_graph(a, t, &sol.eve_strategy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{eventually_letter, infinitely_often};
    use crate::games::is_even;

    fn alternating() -> RegularTree {
        RegularTree::new(vec![0, 1], vec![[1, 1], [0, 0]], 0).unwrap()
    }

    #[test]
    fn eventually_b_on_every_branch() {
        let a = eventually_letter(1);
        assert!(membership(&a, &RegularTree::constant(1)).unwrap());
        assert!(!membership(&a, &RegularTree::constant(0)).unwrap());
        assert!(membership(&a, &alternating()).unwrap());
        // Left branch stays on 0 forever.
        let t = RegularTree::new(vec![0, 1], vec![[0, 1], [1, 1]], 0).unwrap();
        assert!(!membership(&a, &t).unwrap());
    }

    #[test]
    fn accepting_run_is_even_and_consistent() {
        let a = infinitely_often(1);
        let t = alternating();
        let run = accepting_run(&a, &t).unwrap();
        assert!(is_even(&run.graph).unwrap());
        for (v, &(u, q)) in run.vertices.iter().enumerate() {
            let tr = &a.transitions[run.transition[v]];
            assert_eq!((tr.state, tr.letter), (q, t.labels[u]));
            let l = run.graph.edge(2 * v).target;
            let r = run.graph.edge(2 * v + 1).target;
            assert_eq!(run.vertices[l], (t.succ[u][0], tr.left));
            assert_eq!(run.vertices[r], (t.succ[u][1], tr.right));
        }
        assert!(matches!(
            accepting_run(&a, &RegularTree::constant(0)),
            Err(AutomataError::NoAcceptingRun)
        ));
    }

    #[test]
    fn letters_outside_alphabet_rejected() {
        let a = eventually_letter(1);
        assert!(matches!(
            membership(&a, &RegularTree::constant(5)),
            Err(AutomataError::AlphabetMismatch { letter: 5, .. })
        ));
    }
}
