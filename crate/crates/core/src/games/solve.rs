use std::collections::VecDeque;

use super::graph::{ParityGame, Player, PositionalStrategy, Priority, VertexSet};
use super::GameError;

const NONE: usize = usize::MAX;

/// Winning regions and positional winning strategies of both players.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub eve_region: VertexSet,
    pub adam_region: VertexSet,
    pub eve_strategy: PositionalStrategy,
    pub adam_strategy: PositionalStrategy,
}

impl Solution {
    pub fn winner(&self, v: usize) -> Option<Player> {
        if self.eve_region.contains(&v) {
            Some(Player::Eve)
        } else if self.adam_region.contains(&v) {
            Some(Player::Adam)
        } else {
            None
        }
    }

    pub fn region(&self, p: Player) -> &VertexSet {
        match p {
            Player::Eve => &self.eve_region,
            Player::Adam => &self.adam_region,
        }
    }

    pub fn strategy(&self, p: Player) -> &PositionalStrategy {
        match p {
            Player::Eve => &self.eve_strategy,
            Player::Adam => &self.adam_strategy,
        }
    }
}

/// Vertex-priority arena obtained by splitting every edge into its own node.
///
/// Node `v < base` is the original vertex (neutral priority 0); node
/// `base + e` stands for edge `e` and carries its priority. Since every play
/// alternates between the two kinds, the dominant priority is unchanged.
struct Split {
    base: usize,
    owner: Vec<Player>,
    prio: Vec<Priority>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
}

impl Split {
    fn new(game: &ParityGame) -> (Self, Vec<bool>) {
        let g = &game.graph;
        let base = g.universe();
        let total = base + g.edge_slots();
        let mut owner = vec![Player::Eve; total];
        let mut prio = vec![0; total];
        let mut succ = vec![Vec::new(); total];
        let mut pred = vec![Vec::new(); total];
        let mut live = vec![false; total];
        for v in g.vertices() {
            owner[v] = game.owner(v);
            live[v] = true;
        }
        for e in g.edges() {
            let edge = g.edge(e);
            let node = base + e;
            live[node] = true;
            prio[node] = edge.priority;
            succ[edge.source].push(node);
            pred[node].push(edge.source);
            succ[node].push(edge.target);
            pred[edge.target].push(node);
        }
        (
            Split {
                base,
                owner,
                prio,
                succ,
                pred,
            },
            live,
        )
    }

    fn attract(&self, sub: &[bool], target: &[bool], player: Player, strat: &mut [usize]) -> Vec<bool> {
        let n = sub.len();
        let mut inside = vec![false; n];
        let mut count: Vec<usize> = (0..n)
            .map(|v| {
                if sub[v] {
                    self.succ[v].iter().filter(|&&w| sub[w]).count()
                } else {
                    0
                }
            })
            .collect();
        let mut queue = VecDeque::new();
        for v in 0..n {
            if sub[v] && target[v] {
                inside[v] = true;
                queue.push_back(v);
            }
        }
        while let Some(v) = queue.pop_front() {
            for &u in &self.pred[v] {
                if !sub[u] || inside[u] {
                    continue;
                }
                if self.owner[u] == player {
                    inside[u] = true;
                    strat[u] = v;
                    queue.push_back(u);
                } else {
                    count[u] -= 1;
                    if count[u] == 0 {
                        inside[u] = true;
                        queue.push_back(u);
                    }
                }
            }
        }
        inside
    }

    /// Returns the mask of nodes won by Eve; `strat` receives a winning move
    /// for the owner of every node inside the owner's region.
    fn solve(&self, sub: &[bool], strat: &mut [usize]) -> Vec<bool> {
        let n = sub.len();
        let Some(top) = (0..n).filter(|&v| sub[v]).map(|v| self.prio[v]).max() else {
            return vec![false; n];
        };
        let alpha = Player::of_priority(top);
        let top_nodes: Vec<bool> = (0..n).map(|v| sub[v] && self.prio[v] == top).collect();
        let mut attr_strat = vec![NONE; n];
        let a = self.attract(sub, &top_nodes, alpha, &mut attr_strat);
        let sub1: Vec<bool> = (0..n).map(|v| sub[v] && !a[v]).collect();
        let mut strat1 = vec![NONE; n];
        let eve1 = self.solve(&sub1, &mut strat1);
        let opp1: Vec<bool> = (0..n)
            .map(|v| sub1[v] && (eve1[v] != (alpha == Player::Eve)))
            .collect();
        if !opp1.iter().any(|&b| b) {
            for v in 0..n {
                if !sub[v] {
                    continue;
                }
                if sub1[v] {
                    strat[v] = strat1[v];
                } else if self.owner[v] == alpha {
                    strat[v] = if top_nodes[v] {
                        *self.succ[v].iter().find(|&&w| sub[w]).expect("subgames have no dead ends")
                    } else {
                        attr_strat[v]
                    };
                }
            }
            return vec![alpha == Player::Eve; n]
                .into_iter()
                .zip(sub)
                .map(|(w, &s)| w && s)
                .collect();
        }
        let opp = alpha.opponent();
        let mut b_strat = vec![NONE; n];
        let b = self.attract(sub, &opp1, opp, &mut b_strat);
        let sub2: Vec<bool> = (0..n).map(|v| sub[v] && !b[v]).collect();
        let mut strat2 = vec![NONE; n];
        let eve2 = self.solve(&sub2, &mut strat2);
        let mut eve = vec![false; n];
        for v in 0..n {
            if !sub[v] {
                continue;
            }
            if sub2[v] {
                eve[v] = eve2[v];
                strat[v] = strat2[v];
            } else {
                eve[v] = opp == Player::Eve;
                if opp1[v] {
                    strat[v] = strat1[v];
                } else if self.owner[v] == opp {
                    strat[v] = b_strat[v];
                }
            }
        }
        eve
    }
}

/// Solves `game`, returning both winning regions and positional winning
/// strategies.
pub fn solve(game: &ParityGame) -> Result<Solution, GameError> {
    let g = &game.graph;
    g.check_no_terminal()?;
    let (split, live) = Split::new(game);
    let mut strat = vec![NONE; live.len()];
    let eve = split.solve(&live, &mut strat);
    let mut sol = Solution {
        eve_region: VertexSet::new(),
        adam_region: VertexSet::new(),
        eve_strategy: PositionalStrategy::default(),
        adam_strategy: PositionalStrategy::default(),
    };
    for v in g.vertices() {
        let winner = if eve[v] { Player::Eve } else { Player::Adam };
        match winner {
            Player::Eve => sol.eve_region.insert(v),
            Player::Adam => sol.adam_region.insert(v),
        };
        if game.owner(v) == winner {
            let node = strat[v];
            debug_assert!(node != NONE && node >= split.base, "missing strategy at {v}");
            let e = node - split.base;
            match winner {
                Player::Eve => sol.eve_strategy.set(v, e),
                Player::Adam => sol.adam_strategy.set(v, e),
            }
        }
    }
    Ok(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::{verify_winning_for, ParityGraph};
    use Player::{Adam, Eve};

    #[test]
    fn eve_even_loop() {
        let g = ParityGraph::from_edges(1, [(0, 0, 2)]).unwrap();
        let game = ParityGame::new(g, vec![Eve]).unwrap();
        let sol = solve(&game).unwrap();
        assert_eq!(sol.eve_region, [0].into());
        assert_eq!(sol.eve_strategy.get(0), Some(0));
    }

    #[test]
    fn adam_odd_loop() {
        let g = ParityGraph::from_edges(1, [(0, 0, 1)]).unwrap();
        let game = ParityGame::new(g, vec![Adam]).unwrap();
        let sol = solve(&game).unwrap();
        assert_eq!(sol.adam_region, [0].into());
    }

    #[test]
    fn eve_picks_the_even_loop() {
        let g = ParityGraph::from_edges(1, [(0, 0, 1), (0, 0, 2)]).unwrap();
        let game = ParityGame::new(g, vec![Eve]).unwrap();
        let sol = solve(&game).unwrap();
        assert_eq!(sol.eve_strategy.get(0), Some(1));
    }

    #[test]
    fn mixed_game_strategies_verify() {
        // 0 (Eve) -> 1 (Adam) or 2; 1 -> 0 (3) or 1 (2); 2 loops with 1.
        let g = ParityGraph::from_edges(
            3,
            [(0, 1, 0), (0, 2, 0), (1, 0, 3), (1, 1, 2), (2, 2, 1)],
        )
        .unwrap();
        let game = ParityGame::new(g, vec![Eve, Adam, Eve]).unwrap();
        let sol = solve(&game).unwrap();
        assert_eq!(sol.adam_region, [0, 1, 2].into());
        assert!(verify_winning_for(&game, Adam, &sol.adam_strategy, &sol.adam_region).unwrap());
    }
}
