use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::RegError;
use crate::games::{
    find_odd_lasso, solve, EdgeId, Index, ParityGame, ParityGraph, Player, PositionalStrategy,
    Priority, VertexId, VertexSet,
};

pub const DEFAULT_REG_CAP: usize = 200_000;

/// How counters are reset once Eve has picked register `j` and priority `i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ResetRule {
    /// `i` resets `c_{i',j''}` for every odd `i' < i` and every register;
    /// picking `r_j` resets `c_{i',j'}` for every odd `i'` and `j' < j`.
    #[default]
    Liberal,
    /// `c_{i',j}` for odd `i' < i`, and `c_{r_j,j'}` for `j' < j` with
    /// `r_j` read before the update.
    Literal,
    /// No resets besides the one on overflow. Only useful as a mutant.
    Never,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RegOptions {
    pub reset: ResetRule,
    pub cap: usize,
}

impl Default for RegOptions {
    fn default() -> Self {
        RegOptions {
            reset: ResetRule::Liberal,
            cap: DEFAULT_REG_CAP,
        }
    }
}

/// Register contents for `r_1 … r_m` and counters `c_{i,j}` for odd `i` in
/// I and `1 ≤ j ≤ m`. `r_0` never needs storage: it always outputs 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RegConfig {
    pub registers: Vec<Priority>,
    pub counters: Vec<u32>,
}

/// Shifts `J` by an even amount so that its minimum is 1 or 2.
pub fn normalize_j(j: Index) -> Index {
    let lo = if j.lo == 0 { 2 } else { 2 - j.lo % 2 };
    Index::new(lo, j.hi + lo - j.lo).expect("shift preserves order")
}

/// The step function of the transduction game, independent of any arena.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegRules {
    pub index_i: Index,
    /// Normalized output index.
    pub index_j: Index,
    pub n: u32,
    pub reset: ResetRule,
    odd_i: Vec<Priority>,
    top: usize,
}

impl RegRules {
    pub fn new(index_i: Index, index_j: Index, n: u32, reset: ResetRule) -> Self {
        let index_j = normalize_j(index_j);
        RegRules {
            index_i,
            index_j,
            n,
            reset,
            odd_i: index_i.odds().collect(),
            top: (index_j.hi / 2) as usize,
        }
    }

    pub fn has_r0(&self) -> bool {
        self.index_j.lo == 1
    }

    /// Available register indices, ascending.
    pub fn registers(&self) -> Vec<usize> {
        let from = if self.has_r0() { 0 } else { 1 };
        (from..=self.top).collect()
    }

    pub fn odd_priorities(&self) -> &[Priority] {
        &self.odd_i
    }

    fn counter(&self, odd: Priority, j: usize) -> Option<usize> {
        let k = self.odd_i.iter().position(|&x| x == odd)?;
        Some(k * self.top + j - 1)
    }

    pub fn counter_value(&self, cfg: &RegConfig, odd: Priority, j: usize) -> Option<u32> {
        self.counter(odd, j).map(|k| cfg.counters[k])
    }

    pub fn initial_register(&self) -> Priority {
        let i = self.index_i;
        match i.max_even() {
            Some(p) => p,
            None => i.lo - i.lo % 2,
        }
    }

    pub fn initial(&self) -> RegConfig {
        RegConfig {
            registers: vec![self.initial_register(); self.top],
            counters: vec![0; self.odd_i.len() * self.top],
        }
    }

    /// Output of picking `r_j`, with the counter change it causes; `None` is
    /// an instant loss.
    pub fn output(&self, cfg: &RegConfig, j: usize) -> Option<(Priority, RegConfig)> {
        if j == 0 {
            return Some((1, cfg.clone()));
        }
        let r = cfg.registers[j - 1];
        let w = 2 * j as Priority;
        if r.is_multiple_of(2) {
            return Some((w, cfg.clone()));
        }
        let k = self.counter(r, j).expect("odd register values lie in I");
        let mut next = cfg.clone();
        if cfg.counters[k] == self.n {
            if !self.index_j.contains(w + 1) {
                return None;
            }
            next.counters[k] = 0;
            Some((w + 1, next))
        } else {
            next.counters[k] += 1;
            Some((w, next))
        }
    }

    /// Values Eve may pass on for a label `p`: `p` itself if even, else any
    /// odd value from `p` to the largest odd priority of I.
    pub fn sharp_choices(&self, p: Priority) -> Vec<Priority> {
        if p.is_multiple_of(2) {
            return vec![p];
        }
        let mut out: Vec<Priority> = self.odd_i.iter().copied().filter(|&i| i >= p).collect();
        if out.is_empty() {
            out.push(p);
        }
        out
    }

    /// Resets and register update after `r_j` was picked and `i` passed on.
    pub fn update(&self, cfg: &RegConfig, j: usize, i: Priority) -> RegConfig {
        let mut next = cfg.clone();
        match self.reset {
            ResetRule::Liberal => {
                for (a, &odd) in self.odd_i.iter().enumerate() {
                    for jj in 1..=self.top {
                        if odd < i || jj < j {
                            next.counters[a * self.top + jj - 1] = 0;
                        }
                    }
                }
            }
            ResetRule::Literal => {
                if j > 0 {
                    for &odd in self.odd_i.iter().filter(|&&odd| odd < i) {
                        next.counters[self.counter(odd, j).unwrap()] = 0;
                    }
                    let before = cfg.registers[j - 1];
                    for jj in 1..j {
                        if let Some(k) = self.counter(before, jj) {
                            next.counters[k] = 0;
                        }
                    }
                }
            }
            ResetRule::Never => {}
        }
        for jj in j.max(1)..=self.top {
            let r = &mut next.registers[jj - 1];
            *r = if jj == j { i } else { (*r).max(i) };
        }
        next
    }

    /// Upper bound on the number of configurations.
    pub fn config_bound(&self) -> usize {
        let values = self.index_i.len().max(1) + 1;
        values.pow(self.top as u32) * (self.n as usize + 1).pow((self.odd_i.len() * self.top) as u32)
    }
}

/// Decoded product vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegNode {
    /// The owner of `vertex` picks a base edge.
    Move { vertex: VertexId, config: RegConfig },
    /// Eve picks a register after base edge `edge`.
    Choice { edge: EdgeId, config: RegConfig },
    /// Eve picks the odd priority passed on for `edge`; the output has
    /// already been produced.
    Sharp {
        edge: EdgeId,
        register: usize,
        config: RegConfig,
    },
    /// Instant loss.
    Sink,
}

/// What a product edge stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegMove {
    Base(EdgeId),
    Register(usize),
    Sharp(Priority),
    Loop,
}

#[derive(Clone, Debug)]
pub struct RegProduct {
    pub game: ParityGame,
    pub nodes: Vec<RegNode>,
    pub moves: Vec<RegMove>,
    pub rules: RegRules,
    initial: HashMap<VertexId, VertexId>,
}

impl RegProduct {
    /// Product vertex of base vertex `v` in the initial configuration.
    pub fn initial(&self, v: VertexId) -> Option<VertexId> {
        self.initial.get(&v).copied()
    }

    pub fn roots(&self) -> VertexSet {
        self.initial.values().copied().collect()
    }

    /// Out-edge of `node` standing for `mv`.
    pub fn find_move(&self, node: VertexId, mv: RegMove) -> Option<EdgeId> {
        self.game.graph.out_edges(node).find(|&e| self.moves[e] == mv)
    }

    pub fn size(&self) -> usize {
        self.nodes.len()
    }
}

/// `Reg_J^n` over every base vertex of `base`.
pub fn reg_product(base: &ParityGame, j: Index, n: u32, opts: RegOptions) -> Result<RegProduct, RegError> {
    let roots: Vec<VertexId> = base.graph.vertices().collect();
    reg_product_from(base, j, n, &roots, opts)
}

/// The part of `Reg_J^n(base)` reachable from the initial configurations of
/// `roots`.
pub fn reg_product_from(
    base: &ParityGame,
    j: Index,
    n: u32,
    roots: &[VertexId],
    opts: RegOptions,
) -> Result<RegProduct, RegError> {
    let g = &base.graph;
    g.check_no_terminal()?;
    let rules = RegRules::new(g.index(), j, n, opts.reset);
    let registers = rules.registers();
    let mut b = Builder {
        ids: HashMap::new(),
        nodes: Vec::new(),
        queue: VecDeque::new(),
        cap: opts.cap,
    };
    let sink = b.intern(RegNode::Sink)?;
    let mut initial = HashMap::new();
    for &v in roots {
        if !g.contains(v) {
            return Err(RegError::Game(crate::games::GameError::VertexOutOfRange(v)));
        }
        let id = b.intern(RegNode::Move {
            vertex: v,
            config: rules.initial(),
        })?;
        initial.insert(v, id);
    }
    let mut edges: Vec<(VertexId, VertexId, Priority)> = Vec::new();
    let mut moves = Vec::new();
    let mut owner = Vec::new();
    while let Some(id) = b.queue.pop_front() {
        let node = b.nodes[id].clone();
        let mut out = Vec::new();
        match node {
            RegNode::Sink => out.push((sink, 1, RegMove::Loop)),
            RegNode::Move { vertex, config } => {
                for e in g.out_edges(vertex) {
                    let t = b.intern(RegNode::Choice {
                        edge: e,
                        config: config.clone(),
                    })?;
                    out.push((t, 0, RegMove::Base(e)));
                }
            }
            RegNode::Choice { edge, config } => {
                let base_edge = g.edge(edge);
                for &r in &registers {
                    let Some((w, after)) = rules.output(&config, r) else {
                        out.push((sink, 1, RegMove::Register(r)));
                        continue;
                    };
                    let t = if base_edge.priority.is_multiple_of(2) {
                        b.intern(RegNode::Move {
                            vertex: base_edge.target,
                            config: rules.update(&after, r, base_edge.priority),
                        })?
                    } else {
                        b.intern(RegNode::Sharp {
                            edge,
                            register: r,
                            config: after,
                        })?
                    };
                    out.push((t, w, RegMove::Register(r)));
                }
            }
            RegNode::Sharp { edge, register, config } => {
                let base_edge = g.edge(edge);
                for i in rules.sharp_choices(base_edge.priority) {
                    let t = b.intern(RegNode::Move {
                        vertex: base_edge.target,
                        config: rules.update(&config, register, i),
                    })?;
                    out.push((t, 0, RegMove::Sharp(i)));
                }
            }
        }
        for (t, p, mv) in out {
            edges.push((id, t, p));
            moves.push(mv);
        }
    }
    for node in &b.nodes {
        owner.push(match node {
            RegNode::Move { vertex, .. } => base.owner(*vertex),
            RegNode::Sink => Player::Adam,
            _ => Player::Eve,
        });
    }
    let hi = rules.index_j.hi.max(1);
    let graph = ParityGraph::new(b.nodes.len(), edges, Index::new(0, hi)?)?;
    Ok(RegProduct {
        game: ParityGame::new(graph, owner)?,
        nodes: b.nodes,
        moves,
        rules,
        initial,
    })
}

struct Builder {
    ids: HashMap<RegNode, VertexId>,
    nodes: Vec<RegNode>,
    queue: VecDeque<VertexId>,
    cap: usize,
}

impl Builder {
    fn intern(&mut self, node: RegNode) -> Result<VertexId, RegError> {
        if let Some(&id) = self.ids.get(&node) {
            return Ok(id);
        }
        if self.nodes.len() >= self.cap {
            return Err(RegError::StateExplosion { cap: self.cap });
        }
        let id = self.nodes.len();
        self.ids.insert(node.clone(), id);
        self.nodes.push(node);
        self.queue.push_back(id);
        Ok(id)
    }
}

/// Whether Eve wins `Reg_J^n(base)` from base vertex `from`.
pub fn eve_wins_reg(base: &ParityGame, j: Index, n: u32, from: VertexId, opts: RegOptions) -> Result<bool, RegError> {
    let product = reg_product_from(base, j, n, &[from], opts)?;
    let sol = solve(&product.game)?;
    Ok(sol.eve_region.contains(&product.initial(from).unwrap()))
}

/// Checks, without the solver, that every play from the initial vertices
/// of `roots` consistent with `sigma` is won by Eve.
pub fn verify_reg_strategy(
    product: &RegProduct,
    sigma: &PositionalStrategy,
    roots: &[VertexId],
) -> Result<(), RegError> {
    let g = &product.game.graph;
    let mut seen = vec![false; g.universe()];
    let mut stack: Vec<VertexId> = roots.iter().filter_map(|&v| product.initial(v)).collect();
    for &s in &stack {
        seen[s] = true;
    }
    let mut keep = vec![false; g.edge_slots()];
    while let Some(v) = stack.pop() {
        let chosen: Vec<EdgeId> = if product.game.owner(v) == Player::Eve {
            let e = sigma.get(v).ok_or(RegError::UndefinedChoice(v))?;
            if !g.is_live(e) || g.edge(e).source != v {
                return Err(RegError::UndefinedChoice(v));
            }
            vec![e]
        } else {
            g.out_edges(v).collect()
        };
        for e in chosen {
            keep[e] = true;
            let t = g.edge(e).target;
            if !seen[t] {
                seen[t] = true;
                stack.push(t);
            }
        }
    }
    let sub = g.restrict_mask(&seen).filter_edges(|e, _| keep[e]);
    match find_odd_lasso(&sub)? {
        Some(lasso) => Err(RegError::StrategyLoses(lasso)),
        None => Ok(()),
    }
}

/// Builds a positional Eve strategy on `product` from a rule mapping each
/// Eve node to the move she makes there.
pub fn strategy_from_rule(
    product: &RegProduct,
    mut rule: impl FnMut(&RegNode) -> Option<RegMove>,
) -> Result<PositionalStrategy, RegError> {
    let mut sigma = PositionalStrategy::default();
    for (v, node) in product.nodes.iter().enumerate() {
        if product.game.owner(v) != Player::Eve {
            continue;
        }
        let Some(mv) = rule(node) else { continue };
        let e = product
            .find_move(v, mv)
            .ok_or_else(|| RegError::PreconditionFailed(format!("move {mv:?} unavailable at {node:?}")))?;
        sigma.set(v, e);
    }
    Ok(sigma)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn adam(n: usize, edges: &[(usize, usize, Priority)]) -> ParityGame {
        ParityGame::adam_only(ParityGraph::from_edges(n, edges.iter().copied()).unwrap())
    }

    fn j(lo: u32, hi: u32) -> Index {
        Index::new(lo, hi).unwrap()
    }

    #[test]
    fn normalization() {
        assert_eq!(normalize_j(j(3, 6)), j(1, 4));
        assert_eq!(normalize_j(j(4, 6)), j(2, 4));
        assert_eq!(normalize_j(j(0, 2)), j(2, 4));
        assert_eq!(normalize_j(j(1, 2)), j(1, 2));
    }

    #[test]
    fn even_loop_wins_with_r1() {
        let g = adam(1, &[(0, 0, 2)]);
        let p = reg_product(&g, j(1, 2), 0, RegOptions::default()).unwrap();
        assert!(p.size() <= 50);
        assert!(eve_wins_reg(&g, j(1, 2), 0, 0, RegOptions::default()).unwrap());
    }

    #[test]
    fn odd_loop_loses() {
        let g = adam(1, &[(0, 0, 1)]);
        for jj in [j(1, 2), j(1, 4), j(2, 4)] {
            for n in 0..=2 {
                assert!(!eve_wins_reg(&g, jj, n, 0, RegOptions::default()).unwrap());
            }
        }
    }

    #[test]
    fn counters_absorb_n_odd_picks() {
        let rules = RegRules::new(j(0, 2), j(1, 2), 2, ResetRule::Liberal);
        let mut cfg = rules.initial();
        cfg.registers[0] = 1;
        let (w1, c1) = rules.output(&cfg, 1).unwrap();
        let (w2, c2) = rules.output(&c1, 1).unwrap();
        assert_eq!((w1, w2), (2, 2));
        assert_eq!(rules.output(&c2, 1), None);
        let rules3 = RegRules::new(j(0, 2), j(1, 3), 1, ResetRule::Liberal);
        let mut cfg = rules3.initial();
        cfg.registers[0] = 1;
        let (_, c1) = rules3.output(&cfg, 1).unwrap();
        let (w, c2) = rules3.output(&c1, 1).unwrap();
        assert_eq!(w, 3);
        assert_eq!(rules3.counter_value(&c2, 1, 1), Some(0));
    }

    #[test]
    fn update_resets_and_raises_registers() {
        let rules = RegRules::new(j(0, 4), j(1, 4), 2, ResetRule::Liberal);
        let mut cfg = rules.initial();
        assert_eq!(cfg.registers, vec![4, 4]);
        cfg.counters = vec![1, 1, 1, 1];
        let next = rules.update(&cfg, 1, 2);
        // c_{1,*} reset by 2 > 1; c_{3,*} kept (3 > 2, register 1 has nothing below).
        assert_eq!(rules.counter_value(&next, 1, 1), Some(0));
        assert_eq!(rules.counter_value(&next, 1, 2), Some(0));
        assert_eq!(rules.counter_value(&next, 3, 1), Some(1));
        assert_eq!(rules.counter_value(&next, 3, 2), Some(1));
        assert_eq!(next.registers, vec![2, 4]);
        let next = rules.update(&cfg, 2, 3);
        assert_eq!(rules.counter_value(&next, 3, 1), Some(0));
        assert_eq!(rules.counter_value(&next, 3, 2), Some(1));
        assert_eq!(next.registers, vec![4, 3]);
    }

    #[test]
    fn literal_reading_is_narrower() {
        let rules = RegRules::new(j(0, 4), j(1, 4), 2, ResetRule::Literal);
        let mut cfg = rules.initial();
        cfg.counters = vec![1, 1, 1, 1];
        cfg.registers = vec![3, 3];
        let next = rules.update(&cfg, 2, 2);
        assert_eq!(rules.counter_value(&next, 1, 1), Some(1));
        assert_eq!(rules.counter_value(&next, 1, 2), Some(0));
        assert_eq!(rules.counter_value(&next, 3, 1), Some(0));
        assert_eq!(rules.counter_value(&next, 3, 2), Some(1));
    }

    #[test]
    fn state_count_within_bound() {
        let g = adam(2, &[(0, 1, 1), (1, 0, 2), (1, 1, 3)]);
        for n in 0..=2 {
            let p = reg_product(&g, j(1, 4), n, RegOptions::default()).unwrap();
            let rules = &p.rules;
            let phases = 1 + g.graph.edge_count() * (1 + rules.registers().len());
            assert!(p.size() <= 1 + g.graph.vertex_count() * rules.config_bound() * phases);
        }
    }

    #[test]
    fn cap_reported() {
        let g = adam(2, &[(0, 1, 1), (1, 0, 2), (1, 1, 3)]);
        let opts = RegOptions {
            cap: 5,
            ..RegOptions::default()
        };
        assert_eq!(
            reg_product(&g, j(1, 4), 2, opts).unwrap_err(),
            RegError::StateExplosion { cap: 5 }
        );
    }

    #[test]
    fn base_game_owner_moves_first() {
        // Eve at 0 can pick the even loop or go to an odd loop at 1.
        let g = ParityGraph::from_edges(2, [(0, 0, 2), (0, 1, 0), (1, 1, 1)]).unwrap();
        let game = ParityGame::new(g, vec![Player::Eve, Player::Adam]).unwrap();
        assert!(eve_wins_reg(&game, j(1, 2), 0, 0, RegOptions::default()).unwrap());
        assert!(!eve_wins_reg(&game, j(1, 2), 0, 1, RegOptions::default()).unwrap());
    }
}
