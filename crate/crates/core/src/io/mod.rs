//! Native JSON manifests, PGSolver interop, and DOT export.

mod dot;
mod manifest;
mod pgsolver;

use thiserror::Error;

use crate::automata::AutomataError;
use crate::games::{GameError, VertexId};
use crate::trees::TreeError;

pub use dot::{ad_to_dot, graph_to_dot, game_to_dot, tree_to_dot};
pub use manifest::{GameData, GraphData, Manifest, Object, PairData, ProductData, FORMAT_VERSION};
pub use pgsolver::{export_pgsolver, import_pgsolver, Conversion, PgImport};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IoError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("line {line}: successor {vertex} is not declared")]
    DanglingSuccessor { line: usize, vertex: usize },
    #[error("game has no vertices")]
    EmptyGame,
    #[error("invalid manifest: {0}")]
    Json(String),
    #[error("manifest format {0} is not supported")]
    UnsupportedVersion(u32),
    #[error("expected a {expected} manifest, found {found}")]
    KindMismatch { expected: &'static str, found: &'static str },
    #[error("vertex {0} has incoming edges of different priorities")]
    NotExpressible(VertexId),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Automata(#[from] AutomataError),
}
