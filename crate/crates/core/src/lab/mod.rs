//! Seeded instance generators, brute-force oracles, counterexample
//! shrinking, and the regression battery over all of the above.

mod battery;
mod brute;
mod gen;
mod shrink;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::games::Index;

pub use battery::{
    run_criterion, run_criterion_with, run_theorem_battery, CheckReport, Criterion, Failure, TheoremReport,
};
pub use brute::{brute_embeds, brute_solve, BruteRegions, DEFAULT_BRUTE_CAP};
pub use gen::{
    planted_even_graph, random_bounded_pair, random_even_graph, random_game, random_graph,
};
pub use shrink::shrink_graph;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenParams {
    pub seed: u64,
    pub vertex_count: usize,
    pub priority_cap: u32,
    /// Probability of each extra edge beyond the one every vertex gets.
    pub edge_density: f64,
    pub index_j: Index,
    pub counter_bound: u32,
    pub instance_count: usize,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            seed: 0,
            vertex_count: 5,
            priority_cap: 4,
            edge_density: 0.3,
            index_j: Index { lo: 1, hi: 2 },
            counter_bound: 1,
            instance_count: 100,
        }
    }
}

impl GenParams {
    pub fn with_seed(&self, seed: u64) -> GenParams {
        GenParams {
            seed,
            ..self.clone()
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabError {
    #[error("gave up after {0} attempts")]
    ExhaustedRetries(usize),
    #[error("{strategies} strategies exceed the cap of {cap}")]
    TooLarge { strategies: u128, cap: u128 },
}
