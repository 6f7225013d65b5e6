use std::collections::{BTreeSet, HashMap, VecDeque};

use super::{AutomataError, Npta, State, Transition};
use crate::games::{Index, Priority};
use crate::transduction::{RegConfig, RegOptions, RegRules};

/// `A` composed with the register game: an automaton over the same letters
/// with output index `J` that accepts a tree iff Eve wins the register game
/// on A's acceptance game of it.
#[derive(Clone, Debug)]
pub struct ComposedAutomaton {
    pub automaton: Npta,
    /// `(state of A, configuration)` per state; `None` is the rejecting sink.
    pub states: Vec<Option<(State, RegConfig)>>,
    pub rules: RegRules,
}

/// Every `(w, cfg')` Eve can reach from `cfg` on a label `p`: pick a
/// register, read its output, then pass on a value.
fn round(rules: &RegRules, cfg: &RegConfig, p: Priority) -> Vec<(Priority, RegConfig)> {
    let mut out = BTreeSet::new();
    for j in rules.registers() {
        let Some((w, after)) = rules.output(cfg, j) else { continue };
        for i in rules.sharp_choices(p) {
            out.insert((w, rules.update(&after, j, i)));
        }
    }
    out.into_iter().collect()
}

/// One transition of A is simulated by two rounds of the register game:
/// one for Eve's move (priority `min I`) shared by both directions, then
/// one per direction on `Ω_d`. The emitted priority is the larger output.
pub fn compose_transducer(a: &Npta, j: Index, n: u32, opts: RegOptions) -> Result<ComposedAutomaton, AutomataError> {
    let rules = RegRules::new(a.index, j, n, opts.reset);
    let index = rules.index_j;
    let mut ids: HashMap<(State, RegConfig), State> = HashMap::new();
    let mut states: Vec<Option<(State, RegConfig)>> = vec![];
    let mut queue = VecDeque::new();
    let mut intern = |key: (State, RegConfig), states: &mut Vec<_>, queue: &mut VecDeque<State>| {
        if let Some(&id) = ids.get(&key) {
            return Ok(id);
        }
        if states.len() >= opts.cap {
            return Err(AutomataError::StateExplosion { cap: opts.cap });
        }
        states.push(Some(key.clone()));
        ids.insert(key, states.len() - 1);
        queue.push_back(states.len() - 1);
        Ok(states.len() - 1)
    };
    intern((a.initial, rules.initial()), &mut states, &mut queue)?;
    let mut out: BTreeSet<Transition> = BTreeSet::new();
    let mut stuck = vec![];
    while let Some(s) = queue.pop_front() {
        let (q, cfg) = states[s].clone().expect("only the sink is None");
        for letter in 0..a.alphabet {
            let before = out.len();
            for d in a.from(q, letter) {
                let t = &a.transitions[d];
                for (w1, c1) in round(&rules, &cfg, a.index.lo) {
                    let left = round(&rules, &c1, t.priorities.0);
                    let right = round(&rules, &c1, t.priorities.1);
                    for (wl, cl) in &left {
                        let l = intern((t.left, cl.clone()), &mut states, &mut queue)?;
                        for (wr, cr) in &right {
                            let r = intern((t.right, cr.clone()), &mut states, &mut queue)?;
                            out.insert(Transition {
                                state: s,
                                letter,
                                left: l,
                                right: r,
                                priorities: (w1.max(*wl), w1.max(*wr)),
                            });
                        }
                    }
                }
            }
            if out.len() == before {
                stuck.push((s, letter));
            }
        }
    }
    if !stuck.is_empty() {
        let odd = index.odds().next().ok_or(AutomataError::NoOddPriority)?;
        let sink = states.len();
        states.push(None);
        let to_sink = |state, letter| Transition {
            state,
            letter,
            left: sink,
            right: sink,
            priorities: (odd, odd),
        };
        out.extend(stuck.into_iter().map(|(s, l)| to_sink(s, l)));
        out.extend((0..a.alphabet).map(|l| to_sink(sink, l)));
    }
    let automaton = Npta::new(a.alphabet, states.len(), 0, out.into_iter().collect(), index)?;
    Ok(ComposedAutomaton {
        automaton,
        states,
        rules,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{eventually_letter, infinitely_often, membership, RegularTree};

    fn trees() -> Vec<RegularTree> {
        vec![
            RegularTree::constant(0),
            RegularTree::constant(1),
            RegularTree::new(vec![0, 1], vec![[1, 1], [0, 0]], 0).unwrap(),
            RegularTree::new(vec![0, 1], vec![[0, 1], [1, 1]], 0).unwrap(),
        ]
    }

    #[test]
    fn buchi_conditions_survive_composition() {
        for a in [eventually_letter(1), infinitely_often(1)] {
            let b = compose_transducer(&a, Index::new(1, 2).unwrap(), 1, RegOptions::default()).unwrap();
            assert_eq!(b.automaton.index, Index::new(1, 2).unwrap());
            for t in trees() {
                assert_eq!(membership(&a, &t).unwrap(), membership(&b.automaton, &t).unwrap());
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let a = infinitely_often(1);
        let opts = RegOptions { cap: 1, ..RegOptions::default() };
        assert!(matches!(
            compose_transducer(&a, Index::new(1, 2).unwrap(), 1, opts),
            Err(AutomataError::StateExplosion { cap: 1 })
        ));
    }
}
