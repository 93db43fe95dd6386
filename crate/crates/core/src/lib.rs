//! Balanced multiple travelling salesman toolkit.
//!
//! * [`instance`]: instances, TSPLIB/CSV formats, seeded generation, plan evaluation.
//! * [`heuristics`]: quota arithmetic plus the nearest-node and closest-vehicle constructions.
//! * [`exact`]: the balanced integer model, a combinatorial branch-and-bound
//!   solver and a brute-force oracle.
//! * [`distlaw`]: closed-form distance laws, their Monte Carlo twins and the
//!   statistics used to fit them.
//!
//! Numeric code is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below name the `f64` and `f32` instantiations.

// `!(x > 0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod distlaw;
pub mod exact;
pub mod heuristics;
pub mod instance;
pub mod rng;
mod scalar;

pub use scalar::Scalar;

pub use distlaw::LawError;
pub use exact::{build_model, brute_force_oracle, check_solution, solve_exact, ExactError, ExactStatus};
pub use heuristics::{balance_plan, closest_vehicle, nearest_node, BalancePlan, Heuristic, HeuristicError};
pub use instance::{
    euclidean_matrix, evaluate_plan, generate_uniform_instance, parse_tsplib, GridSpec, InstanceError, Point,
    Rounding,
};

pub type Instance64 = instance::Instance<f64>;
pub type Instance32 = instance::Instance<f32>;
pub type RoutePlan64 = instance::RoutePlan<f64>;
pub type RoutePlan32 = instance::RoutePlan<f32>;
pub type ExactResult64 = exact::ExactResult<f64>;
pub type ExactResult32 = exact::ExactResult<f32>;
pub type PowerFit64 = distlaw::PowerFit<f64>;
pub type SummaryRow64 = distlaw::SummaryRow<f64>;
pub type PowerFit32 = distlaw::PowerFit<f32>;
pub type SummaryRow32 = distlaw::SummaryRow<f32>;
