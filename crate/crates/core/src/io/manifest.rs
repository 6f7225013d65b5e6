use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::IoError;
use crate::automata::{GuidingFunction, Npta, RegularTree};
use crate::decomposition::{AttractorDecomposition, LabellingPair};
use crate::games::{EdgeId, Index, ParityGame, ParityGraph, Player, PositionalStrategy, Priority, VertexId};
use crate::transduction::{RegNode, RegProduct};
use crate::trees::OrderedTree;

pub const FORMAT_VERSION: u32 = 1;

/// Every edge slot of the arena, so that edge ids survive a round trip;
/// masked-out vertices and edges are listed separately.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphData {
    pub vertices: usize,
    pub index: Index,
    pub edges: Vec<(VertexId, VertexId, Priority)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub absent: Vec<VertexId>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub disabled: Vec<EdgeId>,
}

impl From<&ParityGraph> for GraphData {
    fn from(g: &ParityGraph) -> Self {
        let edges = (0..g.edge_slots())
            .map(|e| {
                let x = g.edge(e);
                (x.source, x.target, x.priority)
            })
            .collect();
        GraphData {
            vertices: g.universe(),
            index: g.index(),
            edges,
            absent: (0..g.universe()).filter(|&v| !g.contains(v)).collect(),
            disabled: (0..g.edge_slots()).filter(|&e| !g.is_live(e)).collect(),
        }
    }
}

impl TryFrom<&GraphData> for ParityGraph {
    type Error = IoError;

    fn try_from(d: &GraphData) -> Result<Self, IoError> {
        let g = ParityGraph::new(d.vertices, d.edges.iter().copied(), d.index)?;
        let mut keep = vec![true; d.vertices];
        for &v in &d.absent {
            *keep.get_mut(v).ok_or(IoError::Json(format!("absent vertex {v} out of range")))? = false;
        }
        Ok(g.restrict_mask(&keep).filter_edges(|e, _| !d.disabled.contains(&e)))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GameData {
    #[serde(flatten)]
    pub graph: GraphData,
    pub owners: Vec<Player>,
}

impl From<&ParityGame> for GameData {
    fn from(g: &ParityGame) -> Self {
        GameData {
            graph: (&g.graph).into(),
            owners: g.owners().to_vec(),
        }
    }
}

impl TryFrom<&GameData> for ParityGame {
    type Error = IoError;

    fn try_from(d: &GameData) -> Result<Self, IoError> {
        Ok(ParityGame::new((&d.graph).try_into()?, d.owners.clone())?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairData {
    #[serde(flatten)]
    pub graph: GraphData,
    pub label_i: Vec<Priority>,
    pub index_i: Index,
    pub label_j: Vec<Priority>,
    pub index_j: Index,
}

impl From<&LabellingPair> for PairData {
    fn from(p: &LabellingPair) -> Self {
        PairData {
            graph: (&p.graph).into(),
            label_i: p.label_i.clone(),
            index_i: p.index_i,
            label_j: p.label_j.clone(),
            index_j: p.index_j,
        }
    }
}

impl TryFrom<&PairData> for LabellingPair {
    type Error = IoError;

    fn try_from(d: &PairData) -> Result<Self, IoError> {
        Ok(LabellingPair::new(
            (&d.graph).try_into()?,
            d.label_i.clone(),
            d.index_i,
            d.label_j.clone(),
            d.index_j,
        )?)
    }
}

/// A register-game product: the game and what each vertex stands for.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductData {
    pub game: GameData,
    pub nodes: Vec<RegNode>,
}

impl From<&RegProduct> for ProductData {
    fn from(p: &RegProduct) -> Self {
        ProductData {
            game: (&p.game).into(),
            nodes: p.nodes.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "snake_case")]
pub enum Object {
    Game(GameData),
    Graph(GraphData),
    Pair(PairData),
    Decomposition(AttractorDecomposition),
    Tree(String),
    Automaton(Npta),
    RegularTree(RegularTree),
    Strategy(PositionalStrategy),
    Product(ProductData),
    Guide(GuidingFunction),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Game(_) => "game",
            Object::Graph(_) => "graph",
            Object::Pair(_) => "pair",
            Object::Decomposition(_) => "decomposition",
            Object::Tree(_) => "tree",
            Object::Automaton(_) => "automaton",
            Object::RegularTree(_) => "regular_tree",
            Object::Strategy(_) => "strategy",
            Object::Product(_) => "product",
            Object::Guide(_) => "guide",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub format: u32,
    #[serde(flatten)]
    pub object: Object,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub meta: BTreeMap<String, String>,
}

macro_rules! accessor {
    ($name:ident, $variant:ident, $ty:ty, $kind:literal) => {
        pub fn $name(&self) -> Result<$ty, IoError> {
            match &self.object {
                Object::$variant(x) => Ok(x.try_into()?),
                other => Err(IoError::KindMismatch {
                    expected: $kind,
                    found: other.kind(),
                }),
            }
        }
    };
}

impl Manifest {
    pub fn new(object: Object) -> Self {
        Manifest {
            format: FORMAT_VERSION,
            object,
            meta: BTreeMap::new(),
        }
    }

    pub fn with_meta(mut self, key: &str, value: impl Into<String>) -> Self {
        self.meta.insert(key.into(), value.into());
        self
    }

    pub fn game(g: &ParityGame) -> Self {
        Self::new(Object::Game(g.into()))
    }

    pub fn graph(g: &ParityGraph) -> Self {
        Self::new(Object::Graph(g.into()))
    }

    pub fn pair(p: &LabellingPair) -> Self {
        Self::new(Object::Pair(p.into()))
    }

    pub fn tree(t: &OrderedTree) -> Self {
        Self::new(Object::Tree(t.to_string()))
    }

    pub fn parse(text: &str) -> Result<Self, IoError> {
        let m: Manifest = serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))?;
        if m.format != FORMAT_VERSION {
            return Err(IoError::UnsupportedVersion(m.format));
        }
        Ok(m)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifests always serialize")
    }

    accessor!(to_game, Game, ParityGame, "game");
    accessor!(to_pair, Pair, LabellingPair, "pair");

    /// A graph, or the arena of a game with ownership dropped.
    pub fn to_graph(&self) -> Result<ParityGraph, IoError> {
        match &self.object {
            Object::Graph(d) => d.try_into(),
            Object::Game(d) => (&d.graph).try_into(),
            other => Err(IoError::KindMismatch {
                expected: "graph",
                found: other.kind(),
            }),
        }
    }

    pub fn to_tree(&self) -> Result<OrderedTree, IoError> {
        match &self.object {
            Object::Tree(s) => Ok(s.parse()?),
            other => Err(IoError::KindMismatch {
                expected: "tree",
                found: other.kind(),
            }),
        }
    }

    pub fn to_automaton(&self) -> Result<Npta, IoError> {
        match &self.object {
            Object::Automaton(a) => Ok(Npta::new(a.alphabet, a.states, a.initial, a.transitions.clone(), a.index)?),
            other => Err(IoError::KindMismatch {
                expected: "automaton",
                found: other.kind(),
            }),
        }
    }

    pub fn to_regular_tree(&self) -> Result<RegularTree, IoError> {
        match &self.object {
            Object::RegularTree(t) => Ok(RegularTree::new(t.labels.clone(), t.succ.clone(), t.root)?),
            other => Err(IoError::KindMismatch {
                expected: "regular_tree",
                found: other.kind(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{eventually_letter, RegularTree};
    use crate::decomposition::build_ad;

    fn round(m: &Manifest) -> Manifest {
        Manifest::parse(&m.to_json()).unwrap()
    }

    #[test]
    fn masked_graph_round_trips_with_ids() {
        let g = ParityGraph::from_edges(3, [(0, 1, 2), (1, 2, 1), (2, 0, 0), (1, 1, 3)]).unwrap();
        let h = g.remove_vertices(&[2].into()).filter_edges(|e, _| e != 3);
        let back = round(&Manifest::graph(&h)).to_graph().unwrap();
        assert_eq!(back, h);
        assert_eq!(back.edge_slots(), 4);
        assert!(back.is_live(0) && !back.is_live(3));
    }

    #[test]
    fn every_kind_round_trips() {
        let g = ParityGraph::from_edges(2, [(0, 1, 2), (1, 0, 1)]).unwrap();
        let game = ParityGame::new(g.clone(), vec![Player::Eve, Player::Adam]).unwrap();
        let pair = LabellingPair::new(g.clone(), vec![2, 1], Index::new(0, 2).unwrap(), vec![2, 2], Index::new(1, 2).unwrap()).unwrap();
        let manifests = [
            Manifest::game(&game).with_meta("source", "test"),
            Manifest::graph(&g),
            Manifest::pair(&pair),
            Manifest::new(Object::Decomposition(build_ad(&g, 2).unwrap())),
            Manifest::tree(&"((())())".parse().unwrap()),
            Manifest::new(Object::Automaton(eventually_letter(1))),
            Manifest::new(Object::RegularTree(RegularTree::constant(1))),
            Manifest::new(Object::Strategy(PositionalStrategy::default())),
            Manifest::new(Object::Guide(crate::automata::guided_suite().remove(1).guide)),
        ];
        for m in manifests {
            assert_eq!(round(&m), m);
        }
        assert_eq!(round(&Manifest::game(&game)).to_game().unwrap(), game);
        assert_eq!(round(&Manifest::pair(&pair)).to_pair().unwrap(), pair);
    }

    #[test]
    fn version_and_kind_are_checked() {
        let g = ParityGraph::from_edges(1, [(0, 0, 0)]).unwrap();
        let mut m = Manifest::graph(&g);
        assert!(matches!(m.to_game(), Err(IoError::KindMismatch { expected: "game", found: "graph" })));
        m.format = 9;
        assert_eq!(Manifest::parse(&m.to_json()), Err(IoError::UnsupportedVersion(9)));
    }
}
