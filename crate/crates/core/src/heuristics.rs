//! Balanced greedy route construction.
//!
//! Both heuristics hand out customer quotas from [`BalancePlan`]: the first
//! `a` salesmen visit `ceil((n-1)/m)` customers, the others `floor((n-1)/m)`.
//! Every argmin breaks ties by the lowest index (vehicle first, then node),
//! never selects the infinite sentinel, and reads distances along the row of
//! the current node so asymmetric matrices are handled as given.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::instance::{evaluate_plan, Instance, InstanceError, RoutePlan, DEPOT};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HeuristicError {
    #[error("at least one salesman is required")]
    NoSalesmen,
    #[error("{m} salesmen for {customers} customers: some salesman would visit nobody")]
    TooManySalesmen { m: usize, customers: usize },
    #[error("no selectable arc left from node {from}: only sentinel distances remain")]
    OnlySentinels { from: usize },
    #[error(transparent)]
    Plan(#[from] InstanceError),
}

/// Customer quotas per salesman.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BalancePlan {
    pub m: usize,
    /// Number of salesmen that receive the larger quota.
    pub a: usize,
    pub upper: usize,
    pub lower: usize,
}

impl BalancePlan {
    /// Quota of the salesman with 0-based index `k`.
    pub fn quota(&self, k: usize) -> usize {
        if k < self.a {
            self.upper
        } else {
            self.lower
        }
    }

    pub fn total(&self) -> usize {
        self.a * self.upper + (self.m - self.a) * self.lower
    }
}

/// Splits the `n - 1` customers of an `n`-node instance over `m` salesmen.
pub fn balance_plan(n: usize, m: usize) -> Result<BalancePlan, HeuristicError> {
    if m == 0 {
        return Err(HeuristicError::NoSalesmen);
    }
    let customers = n.saturating_sub(1);
    if m > customers {
        return Err(HeuristicError::TooManySalesmen { m, customers });
    }
    let lower = customers / m;
    let a = customers - m * lower;
    let upper = if a == 0 { lower } else { lower + 1 };
    Ok(BalancePlan { m, a, upper, lower })
}

/// The two construction heuristics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Heuristic {
    Nearest,
    Closest,
}

impl Heuristic {
    pub const ALL: [Heuristic; 2] = [Heuristic::Nearest, Heuristic::Closest];

    pub fn as_str(self) -> &'static str {
        match self {
            Heuristic::Nearest => "nearest",
            Heuristic::Closest => "closest",
        }
    }

    pub fn run<T: Scalar>(self, instance: &Instance<T>, m: usize) -> Result<RoutePlan<T>, HeuristicError> {
        match self {
            Heuristic::Nearest => nearest_node(instance, m),
            Heuristic::Closest => closest_vehicle(instance, m),
        }
    }
}

impl fmt::Display for Heuristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Heuristic {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "nearest" | "nearest-node" => Ok(Heuristic::Nearest),
            "closest" | "closest-vehicle" => Ok(Heuristic::Closest),
            other => Err(format!("unknown heuristic {other:?}")),
        }
    }
}

/// Work counters of one construction run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ScanStats {
    /// (from, candidate) distance lookups performed by argmin scans.
    pub pairs_scanned: u64,
}

/// Lowest finite `row[j]` over `candidates`, ties to the lowest `j`.
fn argmin_row<T: Scalar>(row: &[T], candidates: &[usize], stats: &mut ScanStats) -> Option<(T, usize)> {
    let mut best: Option<(T, usize)> = None;
    for &j in candidates {
        stats.pairs_scanned += 1;
        let d = row[j];
        if !d.is_finite() {
            continue;
        }
        match best {
            Some((bd, bj)) if d > bd || (d == bd && j > bj) => {}
            _ => best = Some((d, j)),
        }
    }
    best
}

fn remove_sorted(v: &mut Vec<usize>, x: usize) {
    if let Ok(pos) = v.binary_search(&x) {
        v.remove(pos);
    }
}

/// Builds routes one salesman at a time, always moving to the nearest unvisited node.
pub fn nearest_node<T: Scalar>(instance: &Instance<T>, m: usize) -> Result<RoutePlan<T>, HeuristicError> {
    nearest_node_instrumented(instance, m).map(|(plan, _)| plan)
}

pub fn nearest_node_instrumented<T: Scalar>(
    instance: &Instance<T>,
    m: usize,
) -> Result<(RoutePlan<T>, ScanStats), HeuristicError> {
    let n = instance.n();
    let balance = balance_plan(n, m)?;
    let matrix = instance.matrix();
    let mut stats = ScanStats::default();
    let mut unvisited: Vec<usize> = (1..n).collect();
    let mut routes = Vec::with_capacity(m);
    for k in 0..m {
        let mut route = vec![DEPOT];
        let mut from = 0;
        for _ in 0..balance.quota(k) {
            if unvisited.is_empty() {
                break;
            }
            let (_, next) = argmin_row(matrix.row(from), &unvisited, &mut stats)
                .ok_or(HeuristicError::OnlySentinels { from: from + 1 })?;
            remove_sorted(&mut unvisited, next);
            route.push(next + 1);
            from = next;
        }
        route.push(DEPOT);
        routes.push(route);
    }
    Ok((evaluate_plan(instance, routes)?, stats))
}

/// Grows all routes together, giving each next node to the closest vehicle.
pub fn closest_vehicle<T: Scalar>(instance: &Instance<T>, m: usize) -> Result<RoutePlan<T>, HeuristicError> {
    closest_vehicle_instrumented(instance, m).map(|(plan, _)| plan)
}

/// Closest-vehicle construction with scan counters.
///
/// Each vehicle caches its nearest unvisited node. After an assignment only
/// the moved vehicle and vehicles whose cached node was just taken rescan, so
/// the selected pair is the lexicographic minimum of
/// `(distance, vehicle, node)` over all open vehicles and unvisited nodes,
/// exactly as a full scan would give.
pub fn closest_vehicle_instrumented<T: Scalar>(
    instance: &Instance<T>,
    m: usize,
) -> Result<(RoutePlan<T>, ScanStats), HeuristicError> {
    let n = instance.n();
    let balance = balance_plan(n, m)?;
    let matrix = instance.matrix();
    let mut stats = ScanStats::default();
    let mut unvisited: Vec<usize> = (1..n).collect();
    let mut position = vec![0usize; m];
    let mut visits = vec![0usize; m];
    let mut routes: Vec<Vec<usize>> = vec![vec![DEPOT]; m];

    // All vehicles start at the depot, so they share the first scan.
    let depot_best = argmin_row(matrix.row(0), &unvisited, &mut stats);
    let mut cache: Vec<Option<(T, usize)>> = (0..m)
        .map(|k| if balance.quota(k) > 0 { depot_best } else { None })
        .collect();

    while !unvisited.is_empty() {
        let mut pick: Option<(T, usize, usize)> = None;
        for (k, entry) in cache.iter().enumerate() {
            if let Some((d, j)) = *entry {
                if pick.is_none_or(|(bd, _, _)| d < bd) {
                    pick = Some((d, k, j));
                }
            }
        }
        let (_, k, t) = pick.ok_or_else(|| HeuristicError::OnlySentinels {
            from: position.iter().map(|p| p + 1).min().unwrap_or(DEPOT),
        })?;
        routes[k].push(t + 1);
        visits[k] += 1;
        position[k] = t;
        remove_sorted(&mut unvisited, t);

        for j in 0..m {
            let at_quota = visits[j] >= balance.quota(j);
            if at_quota {
                cache[j] = None;
                continue;
            }
            let stale = j == k || matches!(cache[j], Some((_, c)) if c == t);
            if stale {
                cache[j] = argmin_row(matrix.row(position[j]), &unvisited, &mut stats);
            }
        }
    }
    for route in &mut routes {
        route.push(DEPOT);
    }
    Ok((evaluate_plan(instance, routes)?, stats))
}
