use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{GuidingFunction, Letter, Npta, RegularTree, State, Transition};
use crate::games::{Index, Priority};

fn tr(state: State, letter: Letter, left: State, right: State, p: Priority) -> Transition {
    Transition {
        state,
        letter,
        left,
        right,
        priorities: (p, p),
    }
}

fn npta(states: usize, transitions: Vec<Transition>, lo: Priority, hi: Priority) -> Npta {
    Npta::new(2, states, 0, transitions, Index { lo, hi }).expect("hand-built automaton is well formed")
}

/// One state, every transition labelled 0.
pub fn accept_all() -> Npta {
    npta(1, vec![tr(0, 0, 0, 0, 0), tr(0, 1, 0, 0, 0)], 0, 0)
}

/// One state, every transition labelled 1.
pub fn reject_all() -> Npta {
    npta(1, vec![tr(0, 0, 0, 0, 1), tr(0, 1, 0, 0, 1)], 1, 1)
}

/// Every branch eventually meets letter `b` (over `{0, 1}`).
pub fn eventually_letter(b: Letter) -> Npta {
    let o = 1 - b;
    npta(2, vec![tr(0, o, 0, 0, 1), tr(0, b, 1, 1, 2), tr(1, o, 1, 1, 2), tr(1, b, 1, 1, 2)], 1, 2)
}

/// Every branch meets letter `b` infinitely often.
pub fn infinitely_often(b: Letter) -> Npta {
    npta(1, vec![tr(0, 1 - b, 0, 0, 1), tr(0, b, 0, 0, 2)], 1, 2)
}

/// A complete automaton over `{0, 1}` with up to `max_states` states, one or
/// two transitions per state and letter, and priorities in `[0, cap]`.
pub fn random_npta(seed: u64, max_states: usize, cap: Priority) -> Npta {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let states = r.gen_range(1..=max_states.max(1));
    let mut ts = Vec::new();
    for q in 0..states {
        for a in 0..2 {
            for _ in 0..r.gen_range(1..=2) {
                ts.push(Transition {
                    state: q,
                    letter: a,
                    left: r.gen_range(0..states),
                    right: r.gen_range(0..states),
                    priorities: (r.gen_range(0..=cap), r.gen_range(0..=cap)),
                });
            }
        }
    }
    ts.sort();
    ts.dedup();
    Npta::new(2, states, 0, ts, Index { lo: 0, hi: cap }).expect("complete by construction")
}

/// Every regular tree over `alphabet` letters whose graph has at most
/// `max_nodes` nodes, rooted at node 0.
pub fn enumerate_regular_trees(max_nodes: usize, alphabet: usize) -> Vec<RegularTree> {
    let mut out = Vec::new();
    for k in 1..=max_nodes {
        let labelings = alphabet.pow(k as u32);
        let succs = (k * k).pow(k as u32);
        for l in 0..labelings {
            let labels: Vec<Letter> = (0..k).map(|i| l / alphabet.pow(i as u32) % alphabet).collect();
            for s in 0..succs {
                let succ = (0..k)
                    .map(|i| {
                        let c = s / (k * k).pow(i as u32) % (k * k);
                        [c / k, c % k]
                    })
                    .collect();
                out.push(RegularTree {
                    labels: labels.clone(),
                    succ,
                    root: 0,
                });
            }
        }
    }
    out
}

/// An automaton `a`, an automaton `b` with the same language, a guide from
/// runs of `b` to runs of `a`, and trees accepted by both.
#[derive(Clone, Debug)]
pub struct GuidedTriple {
    pub name: &'static str,
    pub a: Npta,
    pub b: Npta,
    pub guide: GuidingFunction,
    pub trees: Vec<RegularTree>,
    /// Whether the guide is expected to map accepting runs to accepting ones.
    pub preserving: bool,
}

/// Guide that fires the first transition of A matching the state and letter.
fn by_letter(a: &Npta, b: &Npta) -> GuidingFunction {
    GuidingFunction::from_fn(a, b, |p, t| a.from(p, t.letter).next().expect("complete"))
}

fn tree(labels: &[Letter], succ: &[[usize; 2]]) -> RegularTree {
    RegularTree::new(labels.to_vec(), succ.to_vec(), 0).expect("hand-built tree")
}

/// Hand-built triples; the last one is a negative control whose guide
/// steers A into a rejecting state.
pub fn guided_suite() -> Vec<GuidedTriple> {
    let buchi = infinitely_often(1);
    let buchi_trees = vec![
        RegularTree::constant(1),
        tree(&[0, 1], &[[1, 1], [0, 0]]),
        tree(&[0, 1], &[[1, 1], [1, 1]]),
        tree(&[1, 0, 0], &[[1, 2], [0, 0], [0, 1]]),
    ];
    let mut out = Vec::new();

    out.push(GuidedTriple {
        name: "identity",
        guide: by_letter(&buchi, &buchi),
        a: buchi.clone(),
        b: buchi.clone(),
        trees: buchi_trees.clone(),
        preserving: true,
    });

    // Acceptance one step late: state 1 means "just read the letter".
    let delayed = npta(2, vec![tr(0, 0, 0, 0, 1), tr(0, 1, 1, 1, 1), tr(1, 0, 0, 0, 2), tr(1, 1, 1, 1, 2)], 1, 2);
    out.push(GuidedTriple {
        name: "delayed",
        guide: by_letter(&delayed, &buchi),
        a: delayed,
        b: buchi.clone(),
        trees: buchi_trees.clone(),
        preserving: true,
    });

    let shifted = npta(1, vec![tr(0, 0, 0, 0, 3), tr(0, 1, 0, 0, 4)], 3, 4);
    out.push(GuidedTriple {
        name: "shifted",
        guide: by_letter(&shifted, &buchi),
        a: shifted,
        b: buchi.clone(),
        trees: buchi_trees.clone(),
        preserving: true,
    });

    // Finitely many 0s on every branch: a co-Büchi automaton against a
    // two-state one alternating between priorities 0 and 2 on letter 1.
    let cobuchi = npta(1, vec![tr(0, 0, 0, 0, 1), tr(0, 1, 0, 0, 0)], 0, 1);
    let split = npta(
        2,
        vec![tr(0, 0, 0, 0, 3), tr(0, 1, 1, 1, 2), tr(1, 0, 0, 0, 3), tr(1, 1, 0, 0, 0)],
        0,
        3,
    );
    out.push(GuidedTriple {
        name: "co-buchi split",
        guide: by_letter(&split, &cobuchi),
        a: split,
        b: cobuchi,
        trees: vec![
            RegularTree::constant(1),
            tree(&[0, 1], &[[1, 1], [1, 1]]),
            tree(&[0, 0, 1], &[[1, 2], [2, 2], [2, 2]]),
        ],
        preserving: true,
    });

    // Nondeterministic: on 0 the waiting state may hop to an equivalent copy.
    let eventually = eventually_letter(1);
    let guessing = npta(
        3,
        vec![
            tr(0, 0, 0, 0, 1),
            tr(0, 0, 2, 2, 1),
            tr(0, 1, 1, 1, 2),
            tr(1, 0, 1, 1, 2),
            tr(1, 1, 1, 1, 2),
            tr(2, 0, 0, 0, 1),
            tr(2, 1, 1, 1, 2),
        ],
        1,
        2,
    );
    let mut hop = true;
    let guide = GuidingFunction::from_fn(&guessing, &eventually, |p, t| {
        let options: Vec<usize> = guessing.from(p, t.letter).collect();
        hop = !hop;
        options[usize::from(hop && options.len() > 1)]
    });
    out.push(GuidedTriple {
        name: "guessing",
        a: guessing,
        b: eventually,
        guide,
        trees: vec![
            RegularTree::constant(1),
            tree(&[0, 1], &[[1, 1], [0, 0]]),
            tree(&[0, 0, 1], &[[1, 2], [2, 2], [2, 2]]),
        ],
        preserving: true,
    });

    // Same language as `buchi`, but the guide picks the transition into the
    // rejecting trap on every 1.
    let trap = npta(2, vec![tr(0, 0, 0, 0, 1), tr(0, 1, 0, 0, 2), tr(0, 1, 1, 1, 1), tr(1, 0, 1, 1, 1), tr(1, 1, 1, 1, 1)], 1, 2);
    let guide = GuidingFunction::from_fn(&trap, &buchi, |p, t| trap.from(p, t.letter).last().expect("complete"));
    out.push(GuidedTriple {
        name: "trap (negative control)",
        a: trap,
        b: buchi,
        guide,
        trees: buchi_trees,
        preserving: false,
    });
    out
}
