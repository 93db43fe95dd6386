//! Exact solution of the balanced mTSP.
//!
//! [`build_model`] fixes the instance, fleet size and route-size window
//! `[K, L]`; [`check_solution`] is the ground truth for feasibility;
//! [`solve_exact`] is a combinatorial branch-and-bound that never needs an LP
//! engine; [`brute_force_oracle`] enumerates tiny instances independently.

mod model;
mod oracle;
mod search;

use thiserror::Error;

use crate::instance::InstanceError;

pub use model::{
    build_model, check_solution, linear_violations, Assignment, ConstraintFamily, DistanceCuts, ExactModel,
    ModelOptions, SolutionCheck, Violation,
};
pub use oracle::{brute_force_oracle, ORACLE_MAX_NODES};
pub use search::{solve_exact, ExactResult, ExactStatus, SearchNode, SearchTree};

#[derive(Debug, Error)]
pub enum ExactError {
    #[error("at least one salesman is required")]
    NoSalesmen,
    #[error("route-size window [{min}, {max}] is empty or starts at zero")]
    InvalidWindow { min: usize, max: usize },
    #[error("{m} routes of {min}..={max} customers cannot cover {customers} customers")]
    InfeasibleWindow { m: usize, min: usize, max: usize, customers: usize },
    #[error("warm-start plan violates the model: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    InvalidWarmStart(Vec<Violation>),
    #[error("time limit must be positive, got {0}")]
    InvalidTimeLimit(f64),
    #[error("oracle accepts at most {max} nodes, got {n}")]
    TooLargeForOracle { n: usize, max: usize },
    #[error("cannot start worker pool: {0}")]
    ThreadPool(String),
    #[error(transparent)]
    Plan(#[from] InstanceError),
}
