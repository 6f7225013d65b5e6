use std::collections::BTreeMap;

use proptest::prelude::*;

use pix_core::automata::*;
use pix_core::decomposition::*;
use pix_core::games::*;
use pix_core::io::*;
use pix_core::lab::*;
use pix_core::transduction::*;
use pix_core::trees::*;

fn params(seed: u64, vertex_count: usize) -> GenParams {
    GenParams {
        seed,
        vertex_count,
        ..GenParams::default()
    }
}

fn top_level(g: &ParityGraph) -> Priority {
    g.max_priority().unwrap_or(0).div_ceil(2) * 2
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generators_are_deterministic(seed in any::<u64>(), n in 1usize..8) {
        prop_assert_eq!(random_game(&params(seed, n)), random_game(&params(seed, n)));
        prop_assert_eq!(random_game(&params(seed, n)).graph.vertex_count(), n);
    }

    #[test]
    fn solver_matches_enumeration(seed in any::<u64>(), n in 1usize..6) {
        let game = random_game(&params(seed, n));
        let sol = solve(&game).unwrap();
        let brute = brute_solve(&game, DEFAULT_BRUTE_CAP).unwrap();
        prop_assert_eq!(&sol.eve_region, &brute.eve);
        prop_assert!(verify_winning(&game, &sol.eve_strategy, &sol.eve_region).is_ok());
    }

    #[test]
    fn evenness_iff_decomposition(seed in any::<u64>(), n in 1usize..9) {
        let g = random_graph(&params(seed, n));
        let d = build_ad(&g, top_level(&g));
        prop_assert_eq!(is_even(&g).unwrap(), d.is_ok());
        if let Ok(d) = d {
            prop_assert!(validate_ad(&g, &d).is_ok());
            prop_assert!(ad_reachability_check(&g, &d));
            prop_assert_eq!(join_ads(&g, d.level, dismantle(&d)).unwrap(), d);
        }
    }

    #[test]
    fn attractor_of_union_is_union_of_partition(seed in any::<u64>(), n in 2usize..8, split in any::<u64>()) {
        let g = random_graph(&params(seed, n));
        let mut parts = vec![VertexSet::new(), VertexSet::new(), VertexSet::new()];
        for v in g.vertices() {
            parts[(split >> (2 * v)) as usize % 3].insert(v);
        }
        let whole: VertexSet = parts.iter().flatten().copied().collect();
        let pieces = attr_partition(&g, &parts).unwrap();
        let union: VertexSet = pieces.iter().flatten().copied().collect();
        prop_assert_eq!(union, attractor_vertices(&g, &whole));
        let total: usize = pieces.iter().map(|p| p.len()).sum();
        prop_assert_eq!(total, attractor_vertices(&g, &whole).len());
    }

    #[test]
    fn manifests_round_trip(seed in any::<u64>(), n in 1usize..8, drop in any::<u8>()) {
        let game = random_game(&params(seed, n));
        let m = Manifest::game(&game);
        prop_assert_eq!(Manifest::parse(&m.to_json()).unwrap().to_game().unwrap(), game.clone());
        let h = game.graph.filter_edges(|e, _| (drop >> (e % 8)) & 1 == 0);
        let back = Manifest::parse(&Manifest::graph(&h).to_json()).unwrap().to_graph().unwrap();
        prop_assert_eq!(back, h);
    }

    #[test]
    fn pgsolver_round_trip_preserves_winners(seed in any::<u64>(), n in 1usize..7) {
        // Give each vertex one priority and put it on every incoming edge.
        let game = random_game(&params(seed, n));
        let g = &game.graph;
        let vp: Vec<Priority> = (0..g.universe()).map(|v| (seed >> v) as Priority % 5).collect();
        let priorities: Vec<Priority> = (0..g.edge_slots()).map(|e| vp[g.edge(e).target]).collect();
        let g2 = g.with_priorities(&priorities, g.index()).unwrap();
        let game2 = ParityGame::new(g2, game.owners().to_vec()).unwrap();
        let text = export_pgsolver(&game2, Conversion::Target).unwrap();
        let back = import_pgsolver(&text, Conversion::Target).unwrap().game;
        prop_assert_eq!(solve(&back).unwrap().eve_region, solve(&game2).unwrap().eve_region);
        prop_assert_eq!(back.graph.edge_count(), game2.graph.edge_count());
    }

    #[test]
    fn greedy_embeddings_are_valid(a in 0usize..60, b in 0usize..200) {
        let trees = enumerate_trees(6, 6, 6);
        let (t, h) = (&trees[a % trees.len()], &trees[b % trees.len()]);
        match embed(t, h) {
            Some(e) => prop_assert!(e.is_valid(t, h)),
            None => prop_assert!(!brute_embeds(t, h)),
        }
    }

    #[test]
    fn strahler_is_monotone_in_n(a in 0usize..500) {
        let trees = enumerate_trees(9, 9, 9);
        let t = &trees[a % trees.len()];
        for n in 1..4 {
            prop_assert!(t.n_strahler(n + 1) <= t.n_strahler(n));
            prop_assert!(t.n_strahler(n) <= t.depth());
        }
    }

    #[test]
    fn bounded_pairs_stay_bounded_upwards(seed in any::<u64>(), n in 0usize..3) {
        let pair = random_bounded_pair(&params(seed, 4), n).unwrap();
        prop_assert!(is_n_bound(&pair, n));
        prop_assert!(is_n_bound(&pair, n + 1));
    }

    #[test]
    fn synthesized_strategies_win(seed in any::<u64>(), n in 1u32..3) {
        let g = random_even_graph(&params(seed, 5)).unwrap();
        let d = build_ad(&g, top_level(&g)).unwrap();
        let s = synth_from_ad(&g, &d, n, RegOptions::default()).unwrap();
        prop_assert!(s.verify().is_ok());
        prop_assert_eq!(s.registers, d.shape().n_strahler(n));
    }

    #[test]
    fn composition_contract(seed in any::<u64>(), t in 0usize..66, n in 0u32..2) {
        let a = random_npta(seed, 2, 3);
        let tree = &enumerate_regular_trees(2, 2)[t];
        let j = Index::new(1, 2).unwrap();
        let b = compose_transducer(&a, j, n, RegOptions::default()).unwrap();
        let ag = acceptance_game(&a, tree).unwrap();
        prop_assert_eq!(
            membership(&b.automaton, tree).unwrap(),
            eve_wins_reg(&ag.game, j, n, ag.initial, RegOptions::default()).unwrap()
        );
    }
}

/// Every positional Eve strategy on the acceptance game, as run graphs.
fn all_runs(a: &Npta, t: &RegularTree) -> Vec<RunGraph> {
    let ag = acceptance_game(a, t).unwrap();
    let g = &ag.game.graph;
    let eve: Vec<VertexId> = g.vertices().filter(|&v| ag.game.owner(v) == Player::Eve).collect();
    let options: Vec<Vec<EdgeId>> = eve.iter().map(|&v| g.out_edges(v).collect()).collect();
    let mut pick = vec![0; eve.len()];
    let mut out = vec![];
    loop {
        let sigma = PositionalStrategy {
            choice: eve.iter().zip(&options).zip(&pick).map(|((&v, o), &k)| (v, o[k])).collect::<BTreeMap<_, _>>(),
        };
        out.push(run_graph(a, t, &sigma).unwrap());
        let mut k = 0;
        loop {
            if k == eve.len() {
                return out;
            }
            pick[k] += 1;
            if pick[k] < options[k].len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
    }
}

#[test]
fn membership_iff_some_run_is_even() {
    let trees = enumerate_regular_trees(2, 2);
    for seed in 0..25 {
        let a = random_npta(seed, 2, 3);
        for t in trees.iter().step_by(5) {
            let runs = all_runs(&a, t);
            assert!(runs.iter().all(|r| r.vertices.len() <= t.len() * a.states));
            let some_even = runs.iter().any(|r| is_even(&r.graph).unwrap());
            assert_eq!(membership(&a, t).unwrap(), some_even, "seed {seed}, tree {t:?}");
        }
    }
}

/// Labels of the run tree down to `depth`, straight from the definition:
/// the A-state at a position is obtained by firing `g` along the path.
fn unfold(a: &Npta, g: &GuidingFunction, run_b: &RunGraph, vb: VertexId, p: State, depth: usize, out: &mut Vec<(usize, State, usize)>) {
    let da = g.table[&(p, run_b.transition[vb])];
    out.push((run_b.vertices[vb].0, p, da));
    if depth == 0 {
        return;
    }
    let ta = &a.transitions[da];
    for (d, q) in [ta.left, ta.right].into_iter().enumerate() {
        unfold(a, g, run_b, run_b.graph.edge(2 * vb + d).target, q, depth - 1, out);
    }
}

fn unfold_run(run: &RunGraph, v: VertexId, depth: usize, out: &mut Vec<(usize, State, usize)>) {
    let (u, q) = run.vertices[v];
    out.push((u, q, run.transition[v]));
    if depth == 0 {
        return;
    }
    for d in 0..2 {
        unfold_run(run, run.graph.edge(2 * v + d).target, depth - 1, out);
    }
}

#[test]
fn guided_runs_unfold_like_the_definition() {
    for tr in guided_suite() {
        for t in &tr.trees {
            let run_b = accepting_run(&tr.b, t).unwrap();
            let guided = guided_run(&tr.guide, &tr.a, &tr.b, t, &run_b).unwrap();
            let (mut x, mut y) = (vec![], vec![]);
            unfold(&tr.a, &tr.guide, &run_b, run_b.root, tr.a.initial, 6, &mut x);
            unfold_run(&guided.run, guided.run.root, 6, &mut y);
            assert_eq!(x, y, "{}", tr.name);
        }
    }
}

#[test]
fn identity_guide_reproduces_the_run() {
    let tr = &guided_suite()[0];
    assert_eq!(tr.name, "identity");
    for t in &tr.trees {
        let run_b = accepting_run(&tr.b, t).unwrap();
        let guided = guided_run(&tr.guide, &tr.a, &tr.b, t, &run_b).unwrap();
        assert_eq!(guided.run.vertices, run_b.vertices);
        assert_eq!(guided.run.priorities(), run_b.priorities());
    }
}

/// With a known equivalent automaton of index J at hand, Eve wins the
/// register game with `|A||B|+2` counters exactly on accepted trees.
#[test]
fn register_game_matches_membership_with_known_equivalent() {
    let trees = enumerate_regular_trees(2, 2);
    for tr in guided_suite().into_iter().filter(|t| t.preserving) {
        let n = (tr.a.states * tr.b.states + 2) as u32;
        for t in &trees {
            let ag = acceptance_game(&tr.a, t).unwrap();
            let wins = eve_wins_reg(&ag.game, tr.b.index, n, ag.initial, RegOptions::default()).unwrap();
            assert_eq!(wins, membership(&tr.a, t).unwrap(), "{} on {t:?}", tr.name);
        }
    }
}
