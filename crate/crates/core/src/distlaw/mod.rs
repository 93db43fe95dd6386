//! Distance laws for uniformly scattered customers.
//!
//! Closed forms for the expected distance between random points (interval,
//! rectangle, square, ball), the expected nearest-neighbour gap, grid tour
//! lengths, and the empirical power law that predicts mTSP route totals from
//! customer and salesman counts. Each closed form has a Monte Carlo twin in
//! [`montecarlo`].

mod closed;
mod fit;
pub mod montecarlo;

use thiserror::Error;

pub use closed::{
    ball_coefficient, expected_pair_distance_ball, expected_pair_distance_interval, expected_pair_distance_rectangle,
    expected_pair_distance_square, grid_2tsp_corner_distance, grid_2tsp_corner_distance_expanded, grid_line_distance,
    grid_scale, grid_tsp_distance, grid_tsp_distance_expanded, min_dist_expectation, square_coefficient,
};
pub use fit::{
    delta_estimate, extrapolate_m, fit_power_law, predict_mtsp_distance, DeltaEstimate, DistanceLaw, PowerFit,
    SummaryRow,
};
pub use montecarlo::{simulate_min_dist, simulate_pair_dist, Domain, Histogram, MonteCarloResult};

/// Coefficient of the two-salesman route total, `c` in `c t^p`.
pub const MTSP_COEFFICIENT: f64 = 138.2;
/// Exponent of the two-salesman route total.
pub const MTSP_EXPONENT: f64 = 0.44;
/// Growth of the route total per extra salesman.
pub const SALESMAN_INCREMENT: f64 = 90.4;
/// Coefficient of the single-salesman route total.
pub const TSP_COEFFICIENT: f64 = 111.37;
/// Exponent of the single-salesman route total.
pub const TSP_EXPONENT: f64 = 0.4704;
/// Coefficient of the expected nearest gap among `n` uniform points in `[0, 1]`.
pub const MIN_DIST_COEFFICIENT: f64 = 0.4158;
/// Exponent of the expected nearest gap.
pub const MIN_DIST_EXPONENT: f64 = -0.949;
/// Grid side the route-total law was calibrated on.
pub const REFERENCE_GRID_SIDE: usize = 100;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum LawError {
    #[error("{what} must be positive, got {value}")]
    NonPositive { what: &'static str, value: f64 },
    #[error("{what} must be at least {min}, got {value}")]
    TooSmall { what: &'static str, min: u64, value: u64 },
    #[error("need b > a, got a = {a}, b = {b}")]
    EmptyRange { a: i64, b: i64 },
    #[error("b - a must be even, got a = {a}, b = {b}")]
    OddGap { a: i64, b: i64 },
    #[error("need at least {needed} points, got {found}")]
    TooFewPoints { needed: usize, found: usize },
    #[error("all abscissae are equal; the slope is undetermined")]
    DegenerateAbscissa,
    #[error("rows mix algorithms {0:?} and {1:?}")]
    MixedAlgorithms(String, String),
    #[error("missing grid cell t = {t}, m = {m}")]
    MissingCell { t: usize, m: usize },
    #[error("duplicate grid cell t = {t}, m = {m}")]
    DuplicateCell { t: usize, m: usize },
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
}
