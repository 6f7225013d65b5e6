//! Nondeterministic parity tree automata on regular trees: acceptance
//! games, runs, guided runs, and composition with the register game.

mod compose;
mod game;
mod guide;
mod suite;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::games::{GameError, Index, Priority};
use crate::transduction::RegError;

pub use compose::{compose_transducer, ComposedAutomaton};
pub use game::{acceptance_game, accepting_run, membership, run_graph, AcceptanceGame, AgNode, RunGraph};
pub use guide::{guided_pair, guided_pair_bound_check, guided_run, GuidedRun};
pub use suite::{
    accept_all, enumerate_regular_trees, eventually_letter, guided_suite, infinitely_often, random_npta,
    reject_all, GuidedTriple,
};

pub type State = usize;
pub type Letter = usize;

/// `(state, letter, left, right)` with the priorities of both directions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Transition {
    pub state: State,
    pub letter: Letter,
    pub left: State,
    pub right: State,
    pub priorities: (Priority, Priority),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Npta {
    /// Letters are `0..alphabet`.
    pub alphabet: usize,
    pub states: usize,
    pub initial: State,
    pub transitions: Vec<Transition>,
    pub index: Index,
}

impl Npta {
    pub fn new(
        alphabet: usize,
        states: usize,
        initial: State,
        transitions: Vec<Transition>,
        index: Index,
    ) -> Result<Self, AutomataError> {
        let a = Npta {
            alphabet,
            states,
            initial,
            transitions,
            index,
        };
        a.check()?;
        Ok(a)
    }

    fn check(&self) -> Result<(), AutomataError> {
        if self.initial >= self.states {
            return Err(AutomataError::BadTransition(self.initial));
        }
        for (k, t) in self.transitions.iter().enumerate() {
            if t.state >= self.states || t.left >= self.states || t.right >= self.states || t.letter >= self.alphabet {
                return Err(AutomataError::BadTransition(k));
            }
            for p in [t.priorities.0, t.priorities.1] {
                if !self.index.contains(p) {
                    return Err(AutomataError::PriorityOutOfRange { transition: k, priority: p });
                }
            }
        }
        for q in 0..self.states {
            for a in 0..self.alphabet {
                if self.from(q, a).next().is_none() {
                    return Err(AutomataError::IncompleteAutomaton { state: q, letter: a });
                }
            }
        }
        Ok(())
    }

    /// Ids of the transitions leaving `q` on `a`.
    pub fn from(&self, q: State, a: Letter) -> impl Iterator<Item = usize> + '_ {
        self.transitions
            .iter()
            .enumerate()
            .filter(move |(_, t)| t.state == q && t.letter == a)
            .map(|(k, _)| k)
    }
}

/// The unfolding of a finite rooted graph in which every node has a left
/// and a right successor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RegularTree {
    pub labels: Vec<Letter>,
    pub succ: Vec<[usize; 2]>,
    pub root: usize,
}

impl RegularTree {
    pub fn new(labels: Vec<Letter>, succ: Vec<[usize; 2]>, root: usize) -> Result<Self, AutomataError> {
        let n = labels.len();
        if succ.len() != n || root >= n || succ.iter().flatten().any(|&s| s >= n) {
            return Err(AutomataError::MalformedTree);
        }
        Ok(RegularTree { labels, succ, root })
    }

    /// The tree whose every node carries `a`.
    pub fn constant(a: Letter) -> Self {
        RegularTree {
            labels: vec![a],
            succ: vec![[0, 0]],
            root: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn alphabet_bound(&self) -> usize {
        self.labels.iter().max().map_or(0, |m| m + 1)
    }
}

/// `g(p, δ_B) = δ_A`, by transition ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<GuideEntry>", from = "Vec<GuideEntry>")]
pub struct GuidingFunction {
    pub table: BTreeMap<(State, usize), usize>,
}

/// Serialized form of one guide entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuideEntry {
    pub state: State,
    pub transition_b: usize,
    pub transition_a: usize,
}

impl From<GuidingFunction> for Vec<GuideEntry> {
    fn from(g: GuidingFunction) -> Self {
        g.table
            .into_iter()
            .map(|((state, transition_b), transition_a)| GuideEntry {
                state,
                transition_b,
                transition_a,
            })
            .collect()
    }
}

impl From<Vec<GuideEntry>> for GuidingFunction {
    fn from(v: Vec<GuideEntry>) -> Self {
        GuidingFunction {
            table: v.into_iter().map(|e| ((e.state, e.transition_b), e.transition_a)).collect(),
        }
    }
}

impl GuidingFunction {
    /// Fills the table for every A-state and B-transition with `pick`.
    pub fn from_fn(a: &Npta, b: &Npta, mut pick: impl FnMut(State, &Transition) -> usize) -> Self {
        let mut table = BTreeMap::new();
        for p in 0..a.states {
            for (k, t) in b.transitions.iter().enumerate() {
                table.insert((p, k), pick(p, t));
            }
        }
        GuidingFunction { table }
    }

    /// Checks that every entry reads the same letter from the given state.
    pub fn check(&self, a: &Npta, b: &Npta) -> Result<(), AutomataError> {
        for (&(p, kb), &ka) in &self.table {
            let (tb, ta) = (b.transitions.get(kb), a.transitions.get(ka));
            match (tb, ta) {
                (Some(tb), Some(ta)) if ta.state == p && ta.letter == tb.letter => {}
                _ => return Err(AutomataError::IncompatibleGuide { state: p, transition: kb }),
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AutomataError {
    #[error("tree uses letter {letter} outside an alphabet of {alphabet}")]
    AlphabetMismatch { letter: Letter, alphabet: usize },
    #[error("no transition from state {state} on letter {letter}")]
    IncompleteAutomaton { state: State, letter: Letter },
    #[error("transition {transition} has priority {priority} outside the index")]
    PriorityOutOfRange { transition: usize, priority: Priority },
    #[error("transition or state {0} refers outside the automaton")]
    BadTransition(usize),
    #[error("tree successor or root out of range")]
    MalformedTree,
    #[error("strategy has no choice at game vertex {0}")]
    UndefinedChoice(usize),
    #[error("guide is undefined or incompatible at state {state}, transition {transition}")]
    IncompatibleGuide { state: State, transition: usize },
    #[error("the automaton has no accepting run on the tree")]
    NoAcceptingRun,
    #[error("composition exceeds {cap} states")]
    StateExplosion { cap: usize },
    #[error("output index has no odd priority to reject with")]
    NoOddPriority,
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Reg(#[from] RegError),
}
