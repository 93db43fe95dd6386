//! The balanced mTSP integer model and its feasibility checker.
//!
//! Variables: binary arcs `x_ij` (`i != j`) and order positions `u_i` for
//! customers. A route plan maps to the canonical assignment `x_ij = 1` for
//! consecutive stops and `u_i` = position of `i` on its route (first customer
//! is 1). [`check_solution`] evaluates every constraint family on that
//! assignment and adds the route-size window `[K, L]` on top.

use std::fmt;

use serde::Serialize;

use super::ExactError;
use crate::instance::{Instance, RoutePlan, DEPOT};
use crate::scalar::{close_rel, Scalar};

/// Optional distance cuts taken from a heuristic plan.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DistanceCuts<T> {
    /// No route may be longer than this.
    pub route_cap: T,
    /// The objective may not exceed this.
    pub total_cap: T,
}

impl<T: Scalar> DistanceCuts<T> {
    /// Per-route cap `max_k h_k` and total cap `sum_k h_k` of `plan`.
    pub fn from_plan(plan: &RoutePlan<T>) -> Self {
        Self {
            route_cap: plan.max_route_distance(),
            total_cap: plan.total_distance(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ModelOptions<T> {
    /// Initial incumbent; must satisfy the model.
    pub warm_start: Option<RoutePlan<T>>,
    pub cuts: Option<DistanceCuts<T>>,
    /// Worker threads for the search; 1 runs the deterministic sequential search.
    pub threads: usize,
}

impl<T> Default for ModelOptions<T> {
    fn default() -> Self {
        Self {
            warm_start: None,
            cuts: None,
            threads: 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExactModel<'a, T: Scalar> {
    instance: &'a Instance<T>,
    m: usize,
    min_customers: usize,
    max_customers: usize,
    warm_start: Option<RoutePlan<T>>,
    cuts: Option<DistanceCuts<T>>,
    threads: usize,
}

pub(crate) fn validate_window(customers: usize, m: usize, min: usize, max: usize) -> Result<(), ExactError> {
    if m == 0 {
        return Err(ExactError::NoSalesmen);
    }
    if min == 0 || min > max {
        return Err(ExactError::InvalidWindow { min, max });
    }
    if m * min > customers || m * max < customers {
        return Err(ExactError::InfeasibleWindow { m, min, max, customers });
    }
    Ok(())
}

/// Builds the model for `m` salesmen each visiting between `min_customers`
/// (`K`) and `max_customers` (`L`) customers.
pub fn build_model<T: Scalar>(
    instance: &Instance<T>,
    m: usize,
    min_customers: usize,
    max_customers: usize,
    options: ModelOptions<T>,
) -> Result<ExactModel<'_, T>, ExactError> {
    validate_window(instance.customers(), m, min_customers, max_customers)?;
    let model = ExactModel {
        instance,
        m,
        min_customers,
        max_customers,
        warm_start: None,
        cuts: options.cuts,
        threads: options.threads.max(1),
    };
    if let Some(plan) = options.warm_start {
        let check = check_solution(&model, &plan);
        if !check.is_feasible() {
            return Err(ExactError::InvalidWarmStart(check.violations));
        }
        return Ok(ExactModel {
            warm_start: Some(plan),
            ..model
        });
    }
    Ok(model)
}

impl<'a, T: Scalar> ExactModel<'a, T> {
    pub fn instance(&self) -> &'a Instance<T> {
        self.instance
    }

    pub fn salesmen(&self) -> usize {
        self.m
    }

    /// `K`.
    pub fn min_customers(&self) -> usize {
        self.min_customers
    }

    /// `L`.
    pub fn max_customers(&self) -> usize {
        self.max_customers
    }

    pub fn warm_start(&self) -> Option<&RoutePlan<T>> {
        self.warm_start.as_ref()
    }

    pub fn cuts(&self) -> Option<&DistanceCuts<T>> {
        self.cuts.as_ref()
    }

    pub fn threads(&self) -> usize {
        self.threads
    }

    /// Single-customer routes are forbidden only when `K > 2`.
    pub fn forbids_short_tours(&self) -> bool {
        self.min_customers > 2
    }

    /// Number of binary arc variables, `n (n - 1)`.
    pub fn arc_variables(&self) -> usize {
        let n = self.instance.n();
        n * (n - 1)
    }

    /// Number of order variables, one per customer.
    pub fn order_variables(&self) -> usize {
        self.instance.customers()
    }

    /// Replaces the thread count.
    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }
}

/// Canonical variable values of a plan. Labels are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    n: usize,
    arcs: Vec<bool>,
    order: Vec<i64>,
}

impl Assignment {
    pub fn from_routes(n: usize, routes: &[Vec<usize>]) -> Self {
        let mut arcs = vec![false; (n + 1) * (n + 1)];
        let mut order = vec![0i64; n + 1];
        for route in routes {
            for w in route.windows(2) {
                if w[0] <= n && w[1] <= n {
                    arcs[w[0] * (n + 1) + w[1]] = true;
                }
            }
            for (pos, &node) in route.iter().enumerate().skip(1) {
                if node != DEPOT && node <= n {
                    order[node] = pos as i64;
                }
            }
        }
        Self { n, arcs, order }
    }

    /// `x_ij` as 0/1.
    pub fn x(&self, i: usize, j: usize) -> i64 {
        i64::from(self.arcs[i * (self.n + 1) + j])
    }

    /// `u_i`.
    pub fn u(&self, i: usize) -> i64 {
        self.order[i]
    }
}

/// Constraint families of the model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ConstraintFamily {
    /// `m` arcs leave the depot.
    DepotOut,
    /// `m` arcs enter the depot.
    DepotIn,
    /// Each customer is entered once.
    VisitIn,
    /// Each customer is left once.
    VisitOut,
    /// `u_i + (L-2) x_1i - x_i1 <= L - 1`.
    UpperBound,
    /// `u_i + x_1i + (2-K) x_i1 >= 2`.
    LowerBound,
    /// `x_1i + x_i1 <= 1` (only when `K > 2`).
    NoReturn,
    /// `u_i - u_j + L x_ij + (L-2) x_ji <= L - 1`.
    SubtourElimination,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Violation {
    RouteCount { expected: usize, found: usize },
    BelowMin { route: usize, customers: usize, min: usize },
    AboveMax { route: usize, customers: usize, max: usize },
    ShortTour { route: usize },
    Coverage { node: usize },
    RouteOverCap { route: usize, distance: f64, cap: f64 },
    TotalOverCap { total: f64, cap: f64 },
    Linear { family: ConstraintFamily, i: usize, j: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::RouteCount { expected, found } => write!(f, "{found} routes, expected {expected}"),
            Violation::BelowMin { route, customers, min } => {
                write!(f, "route {route} below K: {customers} customers < {min}")
            }
            Violation::AboveMax { route, customers, max } => {
                write!(f, "route {route} above L: {customers} customers > {max}")
            }
            Violation::ShortTour { route } => write!(f, "route {route} is a single-customer return tour"),
            Violation::Coverage { node } => write!(f, "node {node} not covered exactly once"),
            Violation::RouteOverCap { route, distance, cap } => {
                write!(f, "route {route} length {distance} exceeds cap {cap}")
            }
            Violation::TotalOverCap { total, cap } => write!(f, "total {total} exceeds cap {cap}"),
            Violation::Linear { family, i, j } => write!(f, "{family:?} violated at ({i}, {j})"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SolutionCheck {
    pub violations: Vec<Violation>,
}

impl SolutionCheck {
    pub fn is_feasible(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluates the linear constraint families on an assignment.
pub fn linear_violations(n: usize, m: usize, min: usize, max: usize, a: &Assignment) -> Vec<Violation> {
    let (k, l) = (min as i64, max as i64);
    let m = m as i64;
    let d = DEPOT;
    let mut out = Vec::new();
    let depot_out: i64 = (2..=n).map(|j| a.x(d, j)).sum();
    let depot_in: i64 = (2..=n).map(|j| a.x(j, d)).sum();
    if depot_out != m {
        out.push(Violation::Linear { family: ConstraintFamily::DepotOut, i: d, j: d });
    }
    if depot_in != m {
        out.push(Violation::Linear { family: ConstraintFamily::DepotIn, i: d, j: d });
    }
    for j in 2..=n {
        let into: i64 = (1..=n).filter(|&i| i != j).map(|i| a.x(i, j)).sum();
        let from: i64 = (1..=n).filter(|&i| i != j).map(|i| a.x(j, i)).sum();
        if into != 1 {
            out.push(Violation::Linear { family: ConstraintFamily::VisitIn, i: j, j });
        }
        if from != 1 {
            out.push(Violation::Linear { family: ConstraintFamily::VisitOut, i: j, j });
        }
    }
    for i in 2..=n {
        let (u, x1i, xi1) = (a.u(i), a.x(d, i), a.x(i, d));
        if u + (l - 2) * x1i - xi1 > l - 1 {
            out.push(Violation::Linear { family: ConstraintFamily::UpperBound, i, j: i });
        }
        if u + x1i + (2 - k) * xi1 < 2 {
            out.push(Violation::Linear { family: ConstraintFamily::LowerBound, i, j: i });
        }
        if k > 2 && x1i + xi1 > 1 {
            out.push(Violation::Linear { family: ConstraintFamily::NoReturn, i, j: i });
        }
        for j in 2..=n {
            if i != j && a.u(i) - a.u(j) + l * a.x(i, j) + (l - 2) * a.x(j, i) > l - 1 {
                out.push(Violation::Linear { family: ConstraintFamily::SubtourElimination, i, j });
            }
        }
    }
    out
}

/// Checks a plan against every model constraint.
pub fn check_solution<T: Scalar>(model: &ExactModel<'_, T>, plan: &RoutePlan<T>) -> SolutionCheck {
    let n = model.instance.n();
    let mut violations = Vec::new();
    let routes = plan.routes();
    if routes.len() != model.m {
        violations.push(Violation::RouteCount { expected: model.m, found: routes.len() });
    }
    let mut seen = vec![0usize; n + 1];
    for route in routes {
        for &v in route.iter().filter(|&&v| v != DEPOT) {
            if v <= n {
                seen[v] += 1;
            } else {
                violations.push(Violation::Coverage { node: v });
            }
        }
    }
    for (v, &c) in seen.iter().enumerate().skip(2) {
        if c != 1 {
            violations.push(Violation::Coverage { node: v });
        }
    }
    for (idx, customers) in plan.customers_per_route().into_iter().enumerate() {
        let route = idx + 1;
        if customers < model.min_customers {
            violations.push(Violation::BelowMin { route, customers, min: model.min_customers });
        }
        if customers > model.max_customers {
            violations.push(Violation::AboveMax { route, customers, max: model.max_customers });
        }
        if model.forbids_short_tours() && customers == 1 {
            violations.push(Violation::ShortTour { route });
        }
    }
    if let Some(cuts) = &model.cuts {
        for (idx, &dist) in plan.per_route_distance().iter().enumerate() {
            if dist > cuts.route_cap && !close_rel(dist, cuts.route_cap, 1e-9) {
                violations.push(Violation::RouteOverCap {
                    route: idx + 1,
                    distance: dist.as_f64(),
                    cap: cuts.route_cap.as_f64(),
                });
            }
        }
        let total = plan.total_distance();
        if total > cuts.total_cap && !close_rel(total, cuts.total_cap, 1e-9) {
            violations.push(Violation::TotalOverCap { total: total.as_f64(), cap: cuts.total_cap.as_f64() });
        }
    }
    let assignment = Assignment::from_routes(n, routes);
    violations.extend(linear_violations(n, model.m, model.min_customers, model.max_customers, &assignment));
    SolutionCheck { violations }
}
