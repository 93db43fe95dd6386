//! Side-by-side totals of heuristics and exact solvers on named instances.

use std::fmt;
use std::str::FromStr;

use mtsp_core::exact::{
    brute_force_oracle, build_model, check_solution, solve_exact, DistanceCuts, ExactResult, ExactStatus,
    ModelOptions,
};
use mtsp_core::heuristics::{nearest_node, Heuristic};
use mtsp_core::instance::{Instance, RoutePlan};
use serde::{Deserialize, Serialize};

use crate::BenchError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Nearest,
    Closest,
    Exact,
    Oracle,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Exact, Method::Nearest, Method::Closest, Method::Oracle];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Nearest => "nearest",
            Method::Closest => "closest",
            Method::Exact => "exact",
            Method::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "exact" => Ok(Method::Exact),
            "oracle" | "brute-force" => Ok(Method::Oracle),
            other => match other.parse::<Heuristic>() {
                Ok(Heuristic::Nearest) => Ok(Method::Nearest),
                Ok(Heuristic::Closest) => Ok(Method::Closest),
                Err(_) => Err(BenchError::Config(format!("unknown algorithm {s:?}"))),
            },
        }
    }
}

/// Route-size window handed to the exact solvers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Window {
    /// `L = ceil((n-1)/m)`, `K = max(1, L-1)`.
    #[default]
    Balanced,
    Explicit { min: usize, max: usize },
}

impl Window {
    pub fn bounds(self, customers: usize, m: usize) -> (usize, usize) {
        match self {
            Window::Balanced => {
                let max = customers.div_ceil(m.max(1));
                (max.saturating_sub(1).max(1), max)
            }
            Window::Explicit { min, max } => (min, max),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CompareOptions {
    pub window: Window,
    /// Seconds per exact solve.
    pub time_limit: f64,
    /// Cap routes and total by the nearest-node plan.
    pub heuristic_cuts: bool,
    pub threads: usize,
}

impl Default for CompareOptions {
    fn default() -> Self {
        Self { window: Window::Balanced, time_limit: 60.0, heuristic_cuts: false, threads: 1 }
    }
}

/// `100 (to - from) / from`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Gap {
    pub from: Method,
    pub to: Method,
    pub percent: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Cell {
    pub method: Method,
    /// Absent when no plan was found.
    pub distance: Option<f64>,
    /// Set for exact solvers.
    pub status: Option<ExactStatus>,
    /// Route-size window used by exact solvers.
    pub window: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub cells: Vec<Cell>,
    pub gaps: Vec<Gap>,
}

impl ComparisonRow {
    pub fn distance(&self, method: Method) -> Option<f64> {
        self.cells.iter().find(|c| c.method == method).and_then(|c| c.distance)
    }

    pub fn gap(&self, from: Method, to: Method) -> Option<f64> {
        self.gaps.iter().find(|g| g.from == from && g.to == to).and_then(|g| g.percent)
    }
}

/// Runs the exact solver warm-started from the nearest-node plan when that plan fits the window.
pub fn solve_exact_warm(
    instance: &Instance<f64>,
    m: usize,
    (min, max): (usize, usize),
    options: &CompareOptions,
) -> Result<ExactResult<f64>, BenchError> {
    let heuristic: Option<RoutePlan<f64>> = nearest_node(instance, m).ok();
    let probe = build_model(instance, m, min, max, ModelOptions::default())?;
    let warm_start = heuristic.clone().filter(|p| check_solution(&probe, p).is_feasible());
    let cuts = if options.heuristic_cuts { heuristic.as_ref().map(DistanceCuts::from_plan) } else { None };
    let model = build_model(instance, m, min, max, ModelOptions { warm_start, cuts, threads: options.threads })?;
    Ok(solve_exact(&model, options.time_limit)?)
}

fn run_cell(instance: &Instance<f64>, m: usize, method: Method, options: &CompareOptions) -> Result<Cell, BenchError> {
    let plain = |plan: RoutePlan<f64>| Cell { method, distance: Some(plan.total_distance()), status: None, window: None };
    let window = options.window.bounds(instance.customers(), m);
    let exact = |r: ExactResult<f64>| Cell {
        method,
        distance: r.best.as_ref().map(|p| p.total_distance()),
        status: Some(r.status),
        window: Some(window),
    };
    Ok(match method {
        Method::Nearest => plain(Heuristic::Nearest.run(instance, m)?),
        Method::Closest => plain(Heuristic::Closest.run(instance, m)?),
        Method::Exact => exact(solve_exact_warm(instance, m, window, options)?),
        Method::Oracle => exact(brute_force_oracle(instance, m, window.0, window.1)?),
    })
}

/// One row per `(instance, m)` with every method's total and all pairwise gaps
/// in the order the methods were given.
pub fn compare_instances(
    instances: &[Instance<f64>],
    m_values: &[usize],
    methods: &[Method],
    options: &CompareOptions,
) -> Result<Vec<ComparisonRow>, BenchError> {
    if methods.is_empty() {
        return Err(BenchError::Config("no algorithms selected".into()));
    }
    let mut rows = Vec::new();
    for instance in instances {
        for &m in m_values {
            let cells = methods
                .iter()
                .map(|&method| run_cell(instance, m, method, options))
                .collect::<Result<Vec<_>, _>>()?;
            let mut gaps = Vec::new();
            for (i, a) in cells.iter().enumerate() {
                for b in &cells[i + 1..] {
                    let percent = match (a.distance, b.distance) {
                        (Some(x), Some(y)) => Some(100.0 * (y - x) / x),
                        _ => None,
                    };
                    gaps.push(Gap { from: a.method, to: b.method, percent });
                }
            }
            rows.push(ComparisonRow { instance: instance.name().to_string(), n: instance.n(), m, cells, gaps });
        }
    }
    Ok(rows)
}
