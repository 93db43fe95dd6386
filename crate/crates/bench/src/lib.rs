//! Experiment harness for the balanced mTSP toolkit.
//!
//! Reproduces instance comparisons ([`compare`]), the seeded heuristic
//! experiment grid ([`experiment`]) and the distance-law pipeline ([`law`]),
//! and renders every table as CSV, Markdown or JSON lines ([`output`]).

// `!(x > 0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod compare;
pub mod experiment;
pub mod law;
pub mod output;
pub mod records;
pub mod resolve;

use mtsp_core::distlaw::LawError;
use mtsp_core::exact::ExactError;
use mtsp_core::{HeuristicError, InstanceError};
use thiserror::Error;

pub use compare::{compare_instances, CompareOptions, ComparisonRow, Gap, Method, Window};
pub use experiment::{run_experiment, ExperimentConfig, ExperimentOutput, SampleRecord};
pub use law::{law_pipeline, table3_rows, LawReport, PredictionRow};
pub use output::Format;
pub use records::PlanRecord;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Heuristic(#[from] HeuristicError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Law(#[from] LawError),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("no fixture or file named {0:?}")]
    UnknownInstance(String),
    #[error("no feasible plan for {instance} with m = {m}")]
    Infeasible { instance: String, m: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl BenchError {
    /// True when the input was well formed but admits no feasible plan.
    pub fn is_infeasible(&self) -> bool {
        matches!(
            self,
            BenchError::Infeasible { .. }
                | BenchError::Exact(ExactError::InfeasibleWindow { .. })
                | BenchError::Heuristic(HeuristicError::TooManySalesmen { .. })
        )
    }
}
