use std::io::Write;

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use pix_core::automata::{acceptance_game, compose_transducer, guided_pair, membership, AutomataError};
use pix_core::decomposition::{build_ad, is_tight, validate_ad, DecompError};
use pix_core::games::{
    find_odd_lasso, player_attractor, solve, GameError, Index, ParityGame, ParityGraph, Player, VertexSet,
};
use pix_core::io::{export_pgsolver, game_to_dot, ad_to_dot, graph_to_dot, tree_to_dot, Conversion, IoError, Manifest, Object};
use pix_core::lab::{
    random_bounded_pair, random_even_graph, random_game, run_criterion, Criterion, GenParams, LabError,
};
use pix_core::transduction::{eve_wins_reg, n_bound_check, reg_product, synth_from_ad, RegError, RegOptions, ResetRule};
use pix_core::trees::{embed, universal_tree, TreeError};

use crate::{input, AdCommand, AutCommand, BoundCommand, Cli, Command, Format, Global, Kind, LabCommand, RegCommand, Reset, Side};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Input(#[from] IoError),
    #[error("resource cap reached: {0}")]
    Cap(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Cap(_) => 3,
            _ => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
            CliError::Input(_) => "input",
            CliError::Cap(_) => "resource_cap",
        }
    }
}

macro_rules! classify {
    ($ty:ty, $($cap:pat),+) => {
        impl From<$ty> for CliError {
            fn from(e: $ty) -> Self {
                match e {
                    $($cap => CliError::Cap(e.to_string()),)+
                    _ => CliError::Usage(e.to_string()),
                }
            }
        }
    };
}

classify!(GameError, GameError::InvalidIndex { .. });
classify!(DecompError, DecompError::StateExplosion { .. }, DecompError::RankOverflow { .. });
classify!(RegError, RegError::StateExplosion { .. });
classify!(AutomataError, AutomataError::StateExplosion { .. });
classify!(LabError, LabError::TooLarge { .. });
classify!(TreeError, TreeError::Undefined { .. });

/// Rendered result and exit code.
pub struct Outcome {
    pub output: String,
    pub code: u8,
}

fn ok(output: String) -> Result<Outcome, CliError> {
    Ok(Outcome { output, code: 0 })
}

fn verdict(yes: bool, output: String) -> Result<Outcome, CliError> {
    Ok(Outcome {
        output,
        code: if yes { 0 } else { 1 },
    })
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

pub fn parse_index(s: &str) -> Result<Index, String> {
    let (lo, hi) = s.split_once(',').ok_or("expected LO,HI")?;
    let lo = lo.trim().parse().map_err(|_| format!("bad bound {lo:?}"))?;
    let hi = hi.trim().parse().map_err(|_| format!("bad bound {hi:?}"))?;
    Index::new(lo, hi).map_err(|e| e.to_string())
}

fn opts(g: &Global) -> RegOptions {
    RegOptions {
        reset: match g.reset_rule {
            Reset::Liberal => ResetRule::Liberal,
            Reset::Literal => ResetRule::Literal,
        },
        cap: g.cap_states,
    }
}

fn render_game(game: &ParityGame, g: &Global) -> Result<String, CliError> {
    Ok(match g.format {
        Format::Native => Manifest::game(game).to_json(),
        Format::Pgsolver => export_pgsolver(game, Conversion::Target)?,
        Format::Dot => game_to_dot(game),
    })
}

fn render_graph(graph: &ParityGraph, g: &Global) -> Result<String, CliError> {
    Ok(match g.format {
        Format::Native => Manifest::graph(graph).to_json(),
        Format::Pgsolver => export_pgsolver(&ParityGame::adam_only(graph.clone()), Conversion::Target)?,
        Format::Dot => graph_to_dot(graph),
    })
}

fn no_pgsolver(g: &Global, what: &str) -> Result<(), CliError> {
    if g.format == Format::Pgsolver {
        return Err(CliError::Usage(format!("{what} has no PGSolver form")));
    }
    Ok(())
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    let g = &cli.global;
    match cli.command {
        Command::Solve { game } => {
            let game = input::game(&game, g)?;
            let sol = solve(&game)?;
            #[derive(Serialize)]
            struct Out<'a> {
                eve_region: &'a VertexSet,
                adam_region: &'a VertexSet,
                eve_strategy: &'a BTreeMap<usize, usize>,
                adam_strategy: &'a BTreeMap<usize, usize>,
            }
            ok(serde_json::to_string_pretty(&Out {
                eve_region: &sol.eve_region,
                adam_region: &sol.adam_region,
                eve_strategy: &sol.eve_strategy.choice,
                adam_strategy: &sol.adam_strategy.choice,
            })
            .expect("serializable"))
        }
        Command::Even { graph } => {
            let graph = input::graph(&graph, g)?;
            match find_odd_lasso(&graph)? {
                None => verdict(true, pretty(&json!({"even": true}))),
                Some(l) => verdict(false, pretty(&json!({"even": false, "lasso": l}))),
            }
        }
        Command::Attract { game, targets, player } => {
            let game = input::game(&game, g)?;
            let player = match player {
                Side::Eve => Player::Eve,
                Side::Adam => Player::Adam,
            };
            let attr = player_attractor(&game, &targets.into_iter().collect(), player);
            ok(pretty(&json!({"attractor": attr})))
        }
        Command::Ad(c) => ad(c, g),
        Command::Strahler { tree, n } => {
            let t = input::tree(&tree, g)?;
            ok(pretty(&json!({"n": n, "strahler": t.n_strahler(n), "depth": t.depth()})))
        }
        Command::Universal { n, k, d, w } => {
            let u = universal_tree(n, k, d, w)?;
            no_pgsolver(g, "a tree")?;
            ok(match g.format {
                Format::Dot => tree_to_dot(&u),
                _ => Manifest::tree(&u).to_json(),
            })
        }
        Command::Embed { tree, host } => {
            let (t, h) = (input::tree(&tree, g)?, input::tree(&host, g)?);
            match embed(&t, &h) {
                Some(e) => verdict(true, pretty(&json!({"embeds": true, "paths": e.paths()}))),
                None => verdict(false, pretty(&json!({"embeds": false}))),
            }
        }
        Command::Reg(c) => reg(c, g),
        Command::Bound(BoundCommand::Check { pair, n }) => {
            let pair = input::pair(&pair, g)?;
            match n_bound_check(&pair, n) {
                Ok(()) => verdict(true, pretty(&json!({"bounded": true, "n": n}))),
                Err(w) => verdict(false, pretty(&json!({"bounded": false, "n": n, "witness": w}))),
            }
        }
        Command::Aut(c) => aut(c, g),
        Command::Lab(c) => lab(c, g),
        Command::Convert { input } => {
            let m = input::manifest(&input, g)?;
            match (&m.object, g.format) {
                (_, Format::Native) => ok(m.to_json()),
                (Object::Game(_), _) => ok(render_game(&m.to_game()?, g)?),
                (Object::Graph(_), _) => ok(render_graph(&m.to_graph()?, g)?),
                (Object::Tree(_), Format::Dot) => ok(tree_to_dot(&m.to_tree()?)),
                (other, f) => Err(CliError::Usage(format!("cannot convert a {} to {f:?}", other.kind()))),
            }
        }
    }
}

fn ad(c: AdCommand, g: &Global) -> Result<Outcome, CliError> {
    match c {
        AdCommand::Build { graph, level } => {
            let graph = input::graph(&graph, g)?;
            let h = level.unwrap_or_else(|| graph.max_priority().unwrap_or(0).div_ceil(2) * 2);
            match build_ad(&graph, h) {
                Ok(d) => {
                    no_pgsolver(g, "a decomposition")?;
                    ok(match g.format {
                        Format::Dot => ad_to_dot(&graph, &d),
                        _ => Manifest::new(Object::Decomposition(d)).to_json(),
                    })
                }
                Err(DecompError::NotEven(l)) => verdict(false, pretty(&json!({"even": false, "lasso": l}))),
                Err(e) => Err(e.into()),
            }
        }
        AdCommand::Check { graph, decomposition } => {
            let graph = input::graph(&graph, g)?;
            let d = input::decomposition(&decomposition, g)?;
            match validate_ad(&graph, &d) {
                Ok(()) => verdict(true, pretty(&json!({"valid": true}))),
                Err(v) => verdict(false, pretty(&json!({"valid": false, "violation": v}))),
            }
        }
        AdCommand::Tight { graph, decomposition } => {
            let graph = input::graph(&graph, g)?;
            let d = input::decomposition(&decomposition, g)?;
            let tight = is_tight(&graph, &d);
            verdict(tight, pretty(&json!({"tight": tight})))
        }
        AdCommand::Shape { decomposition } => {
            let d = input::decomposition(&decomposition, g)?;
            ok(format!("{}\n", d.shape()))
        }
    }
}

fn reg(c: RegCommand, g: &Global) -> Result<Outcome, CliError> {
    match c {
        RegCommand::Build { game, j, n } => {
            let game = input::game(&game, g)?;
            let p = reg_product(&game, j, n, opts(g))?;
            match g.format {
                Format::Native => ok(Manifest::new(Object::Product((&p).into())).to_json()),
                _ => ok(render_game(&p.game, g)?),
            }
        }
        RegCommand::Solve { game, j, n, from } => {
            let game = input::game(&game, g)?;
            let roots: Vec<usize> = match from {
                Some(v) if game.graph.contains(v) => vec![v],
                Some(v) => return Err(CliError::Usage(format!("vertex {v} is not in the game"))),
                None => game.graph.vertices().collect(),
            };
            let mut winning = Vec::new();
            for &v in &roots {
                if eve_wins_reg(&game, j, n, v, opts(g))? {
                    winning.push(v);
                }
            }
            let all = winning.len() == roots.len();
            verdict(all, pretty(&json!({"eve_wins_everywhere": all, "eve_wins_from": winning})))
        }
        RegCommand::Synth { graph, n } => {
            let graph = input::graph(&graph, g)?;
            let h = graph.max_priority().unwrap_or(0).div_ceil(2) * 2;
            let d = match build_ad(&graph, h) {
                Ok(d) => d,
                Err(DecompError::NotEven(l)) => return verdict(false, pretty(&json!({"even": false, "lasso": l}))),
                Err(e) => return Err(e.into()),
            };
            let s = synth_from_ad(&graph, &d, n, opts(g))?;
            let verified = s.verify();
            verdict(
                verified.is_ok(),
                pretty(&json!({
                    "registers": s.registers,
                    "counters": n + 1,
                    "product_size": s.product.size(),
                    "verified": verified.is_ok(),
                    "error": verified.err().map(|e| e.to_string()),
                    "strategy_choices": s.strategy.len(),
                })),
            )
        }
    }
}

fn aut(c: AutCommand, g: &Global) -> Result<Outcome, CliError> {
    match c {
        AutCommand::Game { automaton, tree } => {
            let ag = acceptance_game(&input::automaton(&automaton, g)?, &input::regular_tree(&tree, g)?)?;
            ok(render_game(&ag.game, g)?)
        }
        AutCommand::Member { automaton, tree } => {
            let yes = membership(&input::automaton(&automaton, g)?, &input::regular_tree(&tree, g)?)?;
            verdict(yes, pretty(&json!({"accepted": yes})))
        }
        AutCommand::Compose { automaton, j, n } => {
            let b = compose_transducer(&input::automaton(&automaton, g)?, j, n, opts(g))?;
            ok(Manifest::new(Object::Automaton(b.automaton)).to_json())
        }
        AutCommand::Guide { a, b, guide, tree } => {
            let (a, b) = (input::automaton(&a, g)?, input::automaton(&b, g)?);
            let guide = input::guide(&guide, g)?;
            let t = input::regular_tree(&tree, g)?;
            let (pair, _) = guided_pair(&a, &b, &guide, &t)?;
            let n = a.states * b.states + 1;
            match n_bound_check(&pair, n) {
                Ok(()) => verdict(true, pretty(&json!({"bounded": true, "n": n}))),
                Err(w) => verdict(false, pretty(&json!({"bounded": false, "n": n, "witness": w}))),
            }
        }
    }
}

fn lab(c: LabCommand, g: &Global) -> Result<Outcome, CliError> {
    match c {
        LabCommand::Random { kind, vertices, priorities, n } => {
            let p = GenParams {
                seed: g.seed,
                vertex_count: vertices,
                priority_cap: priorities,
                ..GenParams::default()
            };
            match kind {
                Kind::Game => ok(render_game(&random_game(&p), g)?),
                Kind::Even => ok(render_graph(&random_even_graph(&p)?, g)?),
                Kind::Pair => {
                    no_pgsolver(g, "a labelling pair")?;
                    ok(Manifest::pair(&random_bounded_pair(&p, n)?).to_json())
                }
            }
        }
        LabCommand::Battery { scale, criterion, report } => {
            let p = GenParams {
                seed: g.seed,
                instance_count: scale,
                ..GenParams::default()
            };
            let chosen: Vec<Criterion> = match criterion {
                Some(l) => vec![Criterion::parse(&l).ok_or_else(|| CliError::Usage(format!("unknown criterion {l:?}")))?],
                None if scale == 0 => vec![],
                None => Criterion::ALL.to_vec(),
            };
            let checks: Vec<_> = chosen.into_iter().map(|c| run_criterion(c, &p)).collect();
            let passed = checks.iter().all(|c| c.passed());
            if let Some(path) = report {
                let full = pix_core::lab::TheoremReport { params: p, checks: checks.clone() };
                write_atomic(&path, &full.to_json())?;
            }
            let mut out: String = checks.iter().map(|c| c.line() + "\n").collect();
            out.push_str(if passed { "all criteria passed\n" } else { "some criteria failed\n" });
            verdict(passed, out)
        }
    }
}

fn write_atomic(path: &std::path::Path, text: &str) -> Result<(), CliError> {
    let tmp = path.with_extension("tmp~");
    std::fs::write(&tmp, text)
        .and_then(|_| std::fs::rename(&tmp, path))
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn emit(g: &Global, output: &str) -> Result<(), CliError> {
    let mut text = output.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &g.out {
        Some(path) => write_atomic(path, &text),
        None => {
            let _ = std::io::stdout().write_all(text.as_bytes());
            Ok(())
        }
    }
}
