use super::even::is_even;
use super::graph::{ParityGame, ParityGraph, Player, PositionalStrategy, VertexSet};
use super::GameError;

/// One-player graph induced by Eve playing `sigma` inside `region`.
pub fn strategy_graph(
    game: &ParityGame,
    sigma: &PositionalStrategy,
    region: &VertexSet,
) -> Result<ParityGraph, GameError> {
    strategy_graph_for(game, Player::Eve, sigma, region)
}

/// One-player graph induced by `player` playing `sigma` inside `region`:
/// the player's vertices keep only the chosen edge, the opponent's keep all
/// edges. Fails if a move leaves the region.
pub fn strategy_graph_for(
    game: &ParityGame,
    player: Player,
    sigma: &PositionalStrategy,
    region: &VertexSet,
) -> Result<ParityGraph, GameError> {
    let g = &game.graph;
    let mut chosen = vec![None; g.universe()];
    for &v in region {
        if !g.contains(v) {
            return Err(GameError::VertexOutOfRange(v));
        }
        if game.owner(v) == player {
            let e = sigma.get(v).ok_or(GameError::UndefinedChoice(v))?;
            if e >= g.edge_slots() || !g.is_live(e) || g.edge(e).source != v {
                return Err(GameError::ForeignChoice { vertex: v, edge: e });
            }
            if !region.contains(&g.edge(e).target) {
                return Err(GameError::StrategyEscapesRegion { vertex: v, edge: e });
            }
            chosen[v] = Some(e);
        } else if let Some(e) = g.out_edges(v).find(|&e| !region.contains(&g.edge(e).target)) {
            return Err(GameError::StrategyEscapesRegion { vertex: v, edge: e });
        }
    }
    Ok(g
        .restrict(region)
        .filter_edges(|e, edge| chosen[edge.source].is_none_or(|c| c == e)))
}

/// True iff every play consistent with Eve's `sigma` from `region` is won by
/// Eve.
pub fn verify_winning(
    game: &ParityGame,
    sigma: &PositionalStrategy,
    region: &VertexSet,
) -> Result<bool, GameError> {
    verify_winning_for(game, Player::Eve, sigma, region)
}

pub fn verify_winning_for(
    game: &ParityGame,
    player: Player,
    sigma: &PositionalStrategy,
    region: &VertexSet,
) -> Result<bool, GameError> {
    let h = strategy_graph_for(game, player, sigma, region)?;
    match player {
        Player::Eve => is_even(&h),
        Player::Adam => is_even(&h.shifted(1)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::solve;
    use Player::{Adam, Eve};

    #[test]
    fn keeps_only_chosen_loop() {
        let g = ParityGraph::from_edges(1, [(0, 0, 1), (0, 0, 2)]).unwrap();
        let game = ParityGame::new(g, vec![Eve]).unwrap();
        let mut sigma = PositionalStrategy::default();
        sigma.set(0, 1);
        let h = strategy_graph(&game, &sigma, &[0].into()).unwrap();
        assert_eq!(h.edge_set(), [1].into());
        assert!(verify_winning(&game, &sigma, &[0].into()).unwrap());
        sigma.set(0, 0);
        assert!(!verify_winning(&game, &sigma, &[0].into()).unwrap());
    }

    #[test]
    fn adam_only_unchanged() {
        let g = ParityGraph::from_edges(2, [(0, 1, 1), (1, 0, 2), (1, 1, 0)]).unwrap();
        let game = ParityGame::adam_only(g.clone());
        let h = strategy_graph(&game, &PositionalStrategy::default(), &g.vertex_set()).unwrap();
        assert_eq!(h, g);
    }

    #[test]
    fn empty_region_is_vacuous() {
        let g = ParityGraph::from_edges(1, [(0, 0, 1)]).unwrap();
        let game = ParityGame::new(g, vec![Eve]).unwrap();
        assert!(verify_winning(&game, &PositionalStrategy::default(), &VertexSet::new()).unwrap());
    }

    #[test]
    fn errors() {
        let g = ParityGraph::from_edges(2, [(0, 1, 0), (1, 1, 0), (0, 0, 0)]).unwrap();
        let game = ParityGame::new(g, vec![Eve, Adam]).unwrap();
        let sigma = PositionalStrategy::default();
        assert_eq!(
            strategy_graph(&game, &sigma, &[0].into()),
            Err(GameError::UndefinedChoice(0))
        );
        let mut sigma = PositionalStrategy::default();
        sigma.set(0, 0);
        assert!(matches!(
            strategy_graph(&game, &sigma, &[0].into()),
            Err(GameError::StrategyEscapesRegion { vertex: 0, edge: 0 })
        ));
    }

    #[test]
    fn solver_strategy_graph_is_even() {
        let g = ParityGraph::from_edges(
            4,
            [(0, 1, 1), (0, 2, 2), (1, 3, 3), (2, 0, 1), (3, 3, 4), (1, 0, 0)],
        )
        .unwrap();
        let game = ParityGame::new(g, vec![Eve, Adam, Eve, Adam]).unwrap();
        let sol = solve(&game).unwrap();
        let h = strategy_graph(&game, &sol.eve_strategy, &sol.eve_region).unwrap();
        assert!(is_even(&h).unwrap());
    }
}
