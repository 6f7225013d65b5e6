//! Register games with counters (the priority transduction game), the
//! bound relation between labellings, and the strategies that win them.

mod bound;
mod reg;
mod synth;

use thiserror::Error;

use crate::decomposition::{DecompError, Violation};
use crate::games::{GameError, Lasso, VertexId};

pub use bound::{is_n_bound, n_bound_check, SegmentedPath};
pub use reg::{
    eve_wins_reg, normalize_j, reg_product, reg_product_from, strategy_from_rule, verify_reg_strategy,
    RegConfig, RegMove, RegNode, RegOptions, RegProduct, RegRules, ResetRule, DEFAULT_REG_CAP,
};
pub use synth::{locate, strategy_from_bounded_pair, synth_from_ad, Address, SynthResult};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RegError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("product exceeds {cap} states")]
    StateExplosion { cap: usize },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(Violation),
    #[error("labelling is not bounded")]
    NotBounded(SegmentedPath),
    #[error(transparent)]
    Decomposition(#[from] DecompError),
    #[error("strategy has no move at product vertex {0}")]
    UndefinedChoice(VertexId),
    #[error("a play consistent with the strategy is lost")]
    StrategyLoses(Lasso),
}
