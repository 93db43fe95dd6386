//! Exhaustive enumeration for tiny instances.

use std::time::Instant;

use super::model::validate_window;
use super::search::{ExactResult, ExactStatus};
use super::ExactError;
use crate::instance::{evaluate_plan, Instance, DEPOT};
use crate::scalar::Scalar;

/// Largest node count (depot included) the oracle accepts.
pub const ORACLE_MAX_NODES: usize = 11;

struct Enumeration<'a, T: Scalar> {
    instance: &'a Instance<T>,
    m: usize,
    min: usize,
    max: usize,
    routes: Vec<Vec<usize>>,
    best_cost: T,
    best: Option<Vec<Vec<usize>>>,
    leaves: u64,
}

impl<T: Scalar> Enumeration<'_, T> {
    fn complete(&mut self) {
        self.leaves += 1;
        let cost = self
            .routes
            .iter()
            .flat_map(|r| r.windows(2))
            .fold(T::zero(), |acc, w| acc + self.instance.arc(w[0] - 1, w[1] - 1));
        if cost < self.best_cost {
            self.best_cost = cost;
            self.best = Some(self.routes.clone());
        }
    }

    /// Extends the last route in `self.routes`; `used` marks customers by label.
    fn extend(&mut self, used: u32, placed: usize) {
        let customers = self.instance.customers();
        let current = self.routes.last().map_or(0, |r| r.len() - 1);
        if current >= self.min {
            self.routes.last_mut().expect("open route").push(DEPOT);
            if self.routes.len() == self.m {
                if placed == customers {
                    self.complete();
                }
            } else {
                self.routes.push(vec![DEPOT]);
                self.extend(used, placed);
                self.routes.pop();
            }
            self.routes.last_mut().expect("open route").pop();
        }
        if current < self.max {
            for label in 2..=self.instance.n() {
                if used >> label & 1 == 0 {
                    self.routes.last_mut().expect("open route").push(label);
                    self.extend(used | 1 << label, placed + 1);
                    self.routes.last_mut().expect("open route").pop();
                }
            }
        }
    }
}

/// Minimum over every assignment of customers to `m` ordered routes with
/// `min..=max` customers each, and every order within each route.
pub fn brute_force_oracle<T: Scalar>(
    instance: &Instance<T>,
    m: usize,
    min_customers: usize,
    max_customers: usize,
) -> Result<ExactResult<T>, ExactError> {
    if instance.n() > ORACLE_MAX_NODES {
        return Err(ExactError::TooLargeForOracle { n: instance.n(), max: ORACLE_MAX_NODES });
    }
    validate_window(instance.customers(), m, min_customers, max_customers)?;
    let started = Instant::now();
    let mut search = Enumeration {
        instance,
        m,
        min: min_customers,
        max: max_customers,
        routes: vec![vec![DEPOT]],
        best_cost: T::infinity(),
        best: None,
        leaves: 0,
    };
    search.extend(0, 0);
    let best = match search.best {
        Some(routes) => Some(evaluate_plan(instance, routes)?),
        None => None,
    };
    let objective = best.as_ref().map_or(T::infinity(), |p| p.total_distance());
    Ok(ExactResult {
        status: if best.is_some() { ExactStatus::Optimal } else { ExactStatus::Infeasible },
        incumbent_history: best.iter().map(|p| p.total_distance()).collect(),
        best,
        objective,
        lower_bound: objective,
        nodes_explored: search.leaves,
        wall_time: started.elapsed().as_secs_f64(),
    })
}
