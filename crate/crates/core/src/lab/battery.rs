use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{
    brute_embeds, brute_solve, planted_even_graph, random_bounded_pair, random_even_graph, random_game, random_graph, shrink_graph,
    GenParams, DEFAULT_BRUTE_CAP,
};
use crate::automata::{
    acceptance_game, compose_transducer, enumerate_regular_trees, guided_pair_bound_check, guided_suite, membership,
    random_npta,
};
use crate::decomposition::{
    ad_from_bounded_pair, ad_reachability_check, build_ad, validate_ad, LabellingPair,
};
use crate::games::{is_even, solve, Index, ParityGame, ParityGraph, Priority};
use crate::io::{Manifest, Object};
use crate::transduction::{
    eve_wins_reg, reg_product, strategy_from_bounded_pair, synth_from_ad, RegOptions, ResetRule,
};
use crate::trees::{embeds, enumerate_trees, universal_tree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Criterion {
    SolverOracle,
    EvenDecomposition,
    TransductionSoundness,
    BoundedCompleteness,
    StrahlerCompleteness,
    BoundedToStrahler,
    /// Same instances as [`Criterion::BoundedToStrahler`], measured with
    /// `n+1` in place of `n`.
    BoundedToStrahlerShifted,
    UniversalTrees,
    Composition,
    GuidedBound,
    Mutation,
}

impl Criterion {
    pub const ALL: [Criterion; 11] = [
        Criterion::SolverOracle,
        Criterion::EvenDecomposition,
        Criterion::TransductionSoundness,
        Criterion::BoundedCompleteness,
        Criterion::StrahlerCompleteness,
        Criterion::BoundedToStrahler,
        Criterion::BoundedToStrahlerShifted,
        Criterion::UniversalTrees,
        Criterion::Composition,
        Criterion::GuidedBound,
        Criterion::Mutation,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Criterion::SolverOracle => "1",
            Criterion::EvenDecomposition => "2",
            Criterion::TransductionSoundness => "3",
            Criterion::BoundedCompleteness => "4",
            Criterion::StrahlerCompleteness => "5",
            Criterion::BoundedToStrahler => "6",
            Criterion::BoundedToStrahlerShifted => "6b",
            Criterion::UniversalTrees => "7",
            Criterion::Composition => "8",
            Criterion::GuidedBound => "9",
            Criterion::Mutation => "10",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            Criterion::SolverOracle => "solver agrees with strategy enumeration",
            Criterion::EvenDecomposition => "evenness iff a valid decomposition exists",
            Criterion::TransductionSoundness => "Eve never wins the register game on a non-even graph",
            Criterion::BoundedCompleteness => "Eve wins with n+1 counters on n-bound pairs, by the fixed strategy",
            Criterion::StrahlerCompleteness => "synthesized strategy wins with h registers and n+1 counters",
            Criterion::BoundedToStrahler => "bounded pair gives a decomposition of n-Strahler number at most j",
            Criterion::BoundedToStrahlerShifted => "bounded pair gives a decomposition of (n+1)-Strahler number at most j",
            Criterion::UniversalTrees => "finite universal trees embed their families; greedy embedding is exact",
            Criterion::Composition => "composed automaton decides the register game on acceptance games",
            Criterion::GuidedBound => "guided runs are |A||B|+1-bound by their guides",
            Criterion::Mutation => "never resetting counters breaks soundness or completeness",
        }
    }

    pub fn parse(label: &str) -> Option<Criterion> {
        Criterion::ALL.into_iter().find(|c| c.label() == label)
    }

    fn limit(self) -> Option<Duration> {
        match self {
            Criterion::SolverOracle | Criterion::EvenDecomposition => Some(Duration::from_secs(60)),
            Criterion::TransductionSoundness => Some(Duration::from_secs(600)),
            Criterion::UniversalTrees => Some(Duration::from_secs(300)),
            _ => None,
        }
    }
}

/// One failing instance; `counterexample` replays it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub instance: u64,
    pub detail: String,
    pub counterexample: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub criterion: Criterion,
    pub instances: usize,
    pub failures: Vec<Failure>,
    pub wall_ms: u128,
    pub limit_ms: Option<u128>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl CheckReport {
    pub fn within_limit(&self) -> bool {
        self.limit_ms.is_none_or(|l| self.wall_ms <= l)
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.within_limit()
    }

    /// `PASS 4 ...` / `FAIL 4 ...` with counts and timing.
    pub fn line(&self) -> String {
        let limit = self.limit_ms.map(|l| format!(" (limit {} s)", l / 1000)).unwrap_or_default();
        let note = if self.note.is_empty() { String::new() } else { format!("; {}", self.note) };
        format!(
            "{} criterion {:>2}: {} — {} instances, {} failures, {:.2} s{}{}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.criterion.label(),
            self.criterion.title(),
            self.instances,
            self.failures.len(),
            self.wall_ms as f64 / 1000.0,
            limit,
            note
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub params: GenParams,
    pub checks: Vec<CheckReport>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckReport::passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Runs every criterion. `instance_count` scales all corpus sizes as a
/// percentage of the defaults; `0` gives an empty report.
pub fn run_theorem_battery(p: &GenParams) -> TheoremReport {
    let checks = if p.instance_count == 0 {
        Vec::new()
    } else {
        Criterion::ALL.into_iter().map(|c| run_criterion(c, p)).collect()
    };
    TheoremReport {
        params: p.clone(),
        checks,
    }
}

pub fn run_criterion(c: Criterion, p: &GenParams) -> CheckReport {
    run_criterion_with(c, p, ResetRule::Liberal)
}

/// As [`run_criterion`], with the register game's reset rule replaced.
pub fn run_criterion_with(c: Criterion, p: &GenParams, reset: ResetRule) -> CheckReport {
    let opts = RegOptions {
        reset,
        ..RegOptions::default()
    };
    let start = Instant::now();
    let mut run = Run {
        p,
        instances: 0,
        failures: Vec::new(),
        note: String::new(),
    };
    match c {
        Criterion::SolverOracle => run.solver_oracle(),
        Criterion::EvenDecomposition => run.even_decomposition(),
        Criterion::TransductionSoundness => run.soundness(opts),
        Criterion::BoundedCompleteness => run.bounded_completeness(opts),
        Criterion::StrahlerCompleteness => run.strahler_completeness(opts),
        Criterion::BoundedToStrahler => run.bounded_to_strahler(0),
        Criterion::BoundedToStrahlerShifted => run.bounded_to_strahler(1),
        Criterion::UniversalTrees => run.universal_trees(),
        Criterion::Composition => run.composition(opts),
        Criterion::GuidedBound => run.guided_bound(),
        Criterion::Mutation => run.mutation(),
    }
    CheckReport {
        criterion: c,
        instances: run.instances,
        failures: run.failures,
        wall_ms: start.elapsed().as_millis(),
        limit_ms: c.limit().map(|d| d.as_millis()),
        note: run.note,
    }
}

fn graph_json(g: &ParityGraph) -> Value {
    serde_json::to_value(Manifest::graph(g)).expect("manifests serialize")
}

fn pair_json(pair: &LabellingPair) -> Value {
    serde_json::to_value(Manifest::pair(pair)).expect("manifests serialize")
}

struct Run<'a> {
    p: &'a GenParams,
    instances: usize,
    failures: Vec<Failure>,
    note: String,
}

impl Run<'_> {
    /// `base` scaled by `instance_count` percent.
    fn scaled(&self, base: usize) -> usize {
        (base * self.p.instance_count).div_ceil(100)
    }

    fn seed(&self, k: u64) -> u64 {
        self.p.seed.wrapping_mul(0x1000_0000_01b3).wrapping_add(k)
    }

    fn fail(&mut self, instance: u64, detail: impl Into<String>, counterexample: Value) {
        self.failures.push(Failure {
            instance,
            detail: detail.into(),
            counterexample,
        });
    }

    fn solver_oracle(&mut self) {
        for k in 0..self.scaled(500) as u64 {
            let q = GenParams {
                seed: self.seed(k),
                vertex_count: 1 + k as usize % 6,
                priority_cap: 4,
                ..self.p.clone()
            };
            let game = random_game(&q);
            self.instances += 1;
            let sol = solve(&game).expect("generated games have no terminal vertex");
            match brute_solve(&game, DEFAULT_BRUTE_CAP) {
                Ok(b) if b.eve == sol.eve_region && b.adam == sol.adam_region => {}
                Ok(b) => self.fail(
                    k,
                    format!("solver Eve {:?}, enumeration Eve {:?}", sol.eve_region, b.eve),
                    serde_json::to_value(Manifest::game(&game)).unwrap(),
                ),
                Err(e) => self.fail(k, e.to_string(), serde_json::to_value(Manifest::game(&game)).unwrap()),
            }
        }
    }

    fn even_decomposition(&mut self) {
        fn check(g: &ParityGraph) -> Option<String> {
            let h = g.max_priority().unwrap_or(0).div_ceil(2) * 2;
            let even = is_even(g).ok()?;
            match build_ad(g, h) {
                Ok(d) if !even => Some(format!("odd graph has a decomposition of shape {}", d.shape())),
                Ok(d) => match validate_ad(g, &d) {
                    Err(v) => Some(format!("decomposition fails validation: {v:?}")),
                    Ok(()) if !ad_reachability_check(g, &d) => Some("attractor order is violated".into()),
                    Ok(()) => None,
                },
                Err(e) if even => Some(format!("even graph has no decomposition: {e}")),
                Err(_) => None,
            }
        }
        let total = self.scaled(300) as u64;
        for k in 0..total {
            let q = GenParams {
                seed: self.seed(k),
                vertex_count: 1 + k as usize % 10,
                priority_cap: 4,
                ..self.p.clone()
            };
            // Half unconstrained, half drawn from Eve's winning strategies.
            let g = if k % 2 == 0 {
                random_graph(&q)
            } else {
                random_even_graph(&q).unwrap_or_else(|_| random_graph(&q))
            };
            self.instances += 1;
            if let Some(detail) = check(&g) {
                let small = shrink_graph(&g, |h| check(h).is_some());
                self.fail(k, detail, graph_json(&small));
            }
        }
    }

    fn soundness(&mut self, opts: RegOptions) {
        let js = [Index { lo: 1, hi: 2 }, Index { lo: 1, hi: 4 }, Index { lo: 2, hi: 4 }];
        // Some vertex of Adam's region from which Eve wins, if any.
        let check = |g: &ParityGraph, j: Index, n: u32| -> Result<Option<usize>, String> {
            let game = ParityGame::adam_only(g.clone());
            let adam = solve(&game).map_err(|e| e.to_string())?.adam_region;
            let prod = reg_product(&game, j, n, opts).map_err(|e| e.to_string())?;
            let sol = solve(&prod.game).map_err(|e| e.to_string())?;
            Ok(adam.into_iter().find(|&v| sol.eve_region.contains(&prod.initial(v).unwrap())))
        };
        let mut k = 0u64;
        let mut found = 0;
        while found < self.scaled(200) {
            k += 1;
            let q = GenParams {
                seed: self.seed(k),
                vertex_count: 1 + k as usize % 5,
                priority_cap: 4,
                ..self.p.clone()
            };
            let g = random_graph(&q);
            if is_even(&g).expect("no terminal vertices") {
                continue;
            }
            found += 1;
            for j in js {
                for n in 0..=2 {
                    self.instances += 1;
                    match check(&g, j, n) {
                        Ok(None) => {}
                        Ok(Some(v)) => {
                            let small = shrink_graph(&g, |h| !is_even(h).unwrap() && matches!(check(h, j, n), Ok(Some(_))));
                            self.fail(
                                k,
                                format!("Eve wins from vertex {v} with J = {j}, n = {n}"),
                                json!({"graph": graph_json(&small), "j": j, "n": n}),
                            );
                        }
                        Err(e) => self.fail(k, e, json!({"graph": graph_json(&g), "j": j, "n": n})),
                    }
                }
            }
        }
    }

    fn bounded_completeness(&mut self, opts: RegOptions) {
        let per = self.scaled(150).div_ceil(3) as u64;
        for n in 0..3usize {
            for s in 0..per {
                let q = GenParams {
                    seed: self.seed(s * 7 + n as u64),
                    vertex_count: 1 + s as usize % 5,
                    priority_cap: 4,
                    index_j: Index { lo: 1, hi: 4 },
                    ..self.p.clone()
                };
                let Ok(pair) = random_bounded_pair(&q, n) else {
                    self.note = "some seeds produced no pair".into();
                    continue;
                };
                self.instances += 1;
                let id = n as u64 * per + s;
                let gi = ParityGame::adam_only(pair.view_i().expect("generated pair"));
                let lost: Vec<usize> = gi
                    .graph
                    .vertices()
                    .filter(|&v| !eve_wins_reg(&gi, pair.index_j, n as u32 + 1, v, opts).unwrap_or(false))
                    .collect();
                if !lost.is_empty() {
                    self.fail(id, format!("Eve loses from {lost:?} with n+1 = {}", n + 1), json!({"pair": pair_json(&pair), "n": n}));
                    continue;
                }
                match strategy_from_bounded_pair(&pair, n as u32, opts).and_then(|s| s.verify()) {
                    Ok(()) => {}
                    Err(e) => self.fail(id, format!("fixed strategy: {e}"), json!({"pair": pair_json(&pair), "n": n})),
                }
            }
        }
    }

    fn strahler_completeness(&mut self, opts: RegOptions) {
        let total = self.scaled(150) as u64;
        for k in 0..total {
            let n = 1 + (k % 2) as u32;
            let q = GenParams {
                seed: self.seed(k),
                vertex_count: 1 + k as usize % 6,
                priority_cap: 4,
                ..self.p.clone()
            };
            let Ok(g) = random_even_graph(&q) else { continue };
            self.instances += 1;
            let h = g.max_priority().unwrap_or(0).div_ceil(2) * 2;
            let res = build_ad(&g, h)
                .map_err(|e| e.to_string())
                .and_then(|d| synth_from_ad(&g, &d, n, opts).map_err(|e| e.to_string()))
                .and_then(|s| s.verify().map_err(|e| e.to_string()));
            if let Err(e) = res {
                self.fail(k, e, json!({"graph": graph_json(&g), "n": n}));
            }
        }
        // Planted shapes reach Strahler numbers random graphs rarely do.
        let shapes = enumerate_trees(self.scaled(8).min(8), 4, 4);
        for (k, t) in shapes.iter().enumerate() {
            let g = planted_even_graph(t);
            for n in 1..=2u32 {
                self.instances += 1;
                let res = build_ad(&g, 2 * (t.depth() as Priority - 1))
                    .map_err(|e| e.to_string())
                    .and_then(|d| synth_from_ad(&g, &d, n, opts).map_err(|e| e.to_string()))
                    .and_then(|s| s.verify().map_err(|e| e.to_string()));
                if let Err(e) = res {
                    self.fail(total + 2 * k as u64 + n as u64, e, json!({"graph": graph_json(&g), "n": n, "shape": t.to_string()}));
                }
            }
        }
    }

    fn bounded_to_strahler(&mut self, shift: u32) {
        let per = self.scaled(100).div_ceil(4) as u64;
        let mut worst = 0;
        for j in 1..=2 as Priority {
            for n in 1..=2usize {
                for s in 0..per {
                    let q = GenParams {
                        seed: self.seed(s * 11 + 3 * j as u64 + n as u64),
                        vertex_count: 1 + s as usize % 5,
                        priority_cap: 4,
                        index_j: Index { lo: 1, hi: 2 * j },
                        ..self.p.clone()
                    };
                    let Ok(pair) = random_bounded_pair(&q, n) else { continue };
                    self.instances += 1;
                    let id = ((j as u64 - 1) * 2 + n as u64 - 1) * per + s;
                    let ce = json!({"pair": pair_json(&pair), "n": n, "j": j});
                    let bd = match ad_from_bounded_pair(&pair, n, j) {
                        Ok(bd) => bd,
                        Err(e) => {
                            self.fail(id, e.to_string(), ce);
                            continue;
                        }
                    };
                    if let Err(v) = validate_ad(&bd.graph(), &bd.decomposition) {
                        self.fail(id, format!("invalid on the memory product: {v:?}"), ce);
                        continue;
                    }
                    let s_n = bd.decomposition.shape().n_strahler(n as u32 + shift);
                    worst = worst.max(s_n);
                    if s_n > j {
                        self.fail(id, format!("Strahler number {s_n} exceeds j = {j}"), ce);
                    }
                }
            }
        }
        self.note = format!("largest Strahler number seen {worst}");
    }

    fn universal_trees(&mut self) {
        let family = enumerate_trees(13, 3, 3);
        for n in 1..=3u32 {
            for d in 1..=3u32 {
                for k in 1..=d {
                    for w in 1..=3usize {
                        self.instances += 1;
                        let u = universal_tree(n, k, d, w).expect("k ≤ d");
                        let missed = family
                            .iter()
                            .filter(|t| t.depth() <= d && t.n_strahler(n) <= k && t.max_branching() <= w)
                            .find(|t| !embeds(t, &u));
                        if let Some(t) = missed {
                            self.fail(
                                self.instances as u64,
                                format!("U({n},{k},{d},{w}) misses {t}"),
                                json!({"host": Object::Tree(u.to_string()), "tree": t.to_string()}),
                            );
                        }
                    }
                }
            }
        }
        let small = enumerate_trees(7, 7, 7);
        let hosts = enumerate_trees(9, 9, 9);
        let mut pairs = 0u64;
        for t in &small {
            for h in &hosts {
                pairs += 1;
                if embeds(t, h) != brute_embeds(t, h) {
                    self.fail(pairs, "greedy and exhaustive embedding disagree", json!({"tree": t.to_string(), "host": h.to_string()}));
                }
            }
        }
        self.instances += pairs as usize;
        self.note = format!("{} trees against {} hosts", small.len(), hosts.len());
    }

    fn composition(&mut self, opts: RegOptions) {
        let j = Index { lo: 1, hi: 2 };
        let trees = enumerate_regular_trees(2, 2);
        for k in 0..self.scaled(50) as u64 {
            let a = random_npta(self.seed(k), 3, 3);
            for n in 0..=1 {
                let b = match compose_transducer(&a, j, n, opts) {
                    Ok(b) => b,
                    Err(e) => {
                        self.fail(k, e.to_string(), json!({"automaton": a, "n": n}));
                        continue;
                    }
                };
                for t in &trees {
                    self.instances += 1;
                    let ag = acceptance_game(&a, t).expect("alphabets match");
                    let direct = eve_wins_reg(&ag.game, j, n, ag.initial, opts);
                    let composed = membership(&b.automaton, t);
                    match (direct, composed) {
                        (Ok(x), Ok(y)) if x == y => {}
                        (x, y) => self.fail(
                            k,
                            format!("register game {x:?}, composed automaton {y:?}"),
                            json!({"automaton": a, "tree": t, "n": n}),
                        ),
                    }
                }
            }
        }
    }

    fn guided_bound(&mut self) {
        let suite = guided_suite();
        let preserving: Vec<_> = suite.iter().filter(|t| t.preserving).collect();
        if preserving.len() < 5 || preserving.iter().any(|t| t.trees.len() < 3) {
            self.fail(0, "suite is smaller than 5 triples with 3 trees each", Value::Null);
        }
        let mut caught = 0;
        for (k, tr) in suite.iter().enumerate() {
            for t in &tr.trees {
                self.instances += 1;
                let res = guided_pair_bound_check(&tr.a, &tr.b, &tr.guide, t);
                match (tr.preserving, res) {
                    (true, Ok(true)) => {}
                    (false, Ok(false)) => caught += 1,
                    (false, Ok(true)) => {}
                    (_, res) => self.fail(
                        k as u64,
                        format!("{}: {res:?}", tr.name),
                        json!({"a": tr.a, "b": tr.b, "guide": tr.guide, "tree": t}),
                    ),
                }
            }
        }
        if caught == 0 {
            self.fail(suite.len() as u64, "negative control never failed the bound check", Value::Null);
        }
        self.note = format!("negative control failed on {caught} trees");
    }

    fn mutation(&mut self) {
        let mut caught = 0;
        let mut notes = Vec::new();
        for c in [Criterion::TransductionSoundness, Criterion::BoundedCompleteness] {
            let r = run_criterion_with(c, self.p, ResetRule::Never);
            self.instances += r.instances;
            caught += r.failures.len();
            notes.push(format!("criterion {} broken on {} instances", c.label(), r.failures.len()));
        }
        self.note = notes.join(", ");
        if caught == 0 {
            self.fail(0, "mutant survived both criteria", Value::Null);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_instance_count_gives_empty_report() {
        let p = GenParams {
            instance_count: 0,
            ..GenParams::default()
        };
        assert!(run_theorem_battery(&p).checks.is_empty());
    }

    #[test]
    fn labels_round_trip() {
        for c in Criterion::ALL {
            assert_eq!(Criterion::parse(c.label()), Some(c));
        }
    }

    #[test]
    fn small_scale_checks_pass() {
        let p = GenParams {
            instance_count: 5,
            ..GenParams::default()
        };
        for c in [Criterion::SolverOracle, Criterion::EvenDecomposition, Criterion::StrahlerCompleteness, Criterion::GuidedBound] {
            let r = run_criterion(c, &p);
            assert!(r.passed(), "{}", r.line());
        }
    }
}
