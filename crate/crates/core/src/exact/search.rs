//! Best-first branch-and-bound over partially built routes.
//!
//! All `m` routes grow from the depot at once. A node always extends the open
//! route with the fewest customers (lowest index on ties), either by one
//! unvisited customer or, once it holds at least `K` customers, by closing it.
//! A route's first customer must exceed the previous route's first customer,
//! so each unordered set of routes is generated once.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::model::ExactModel;
use super::ExactError;
use crate::instance::{evaluate_plan, RoutePlan, DEPOT};
use crate::scalar::Scalar;

const CLOCK_CHECK_INTERVAL: u64 = 256;
/// Open nodes held across all workers before searches dive depth-first.
const MAX_OPEN_NODES: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExactStatus {
    /// Search tree exhausted with an incumbent.
    Optimal,
    /// Clock expired with an incumbent.
    FeasibleTimeLimit,
    /// Clock expired before any feasible plan was found.
    NoSolutionTimeLimit,
    /// Search tree exhausted without a feasible plan.
    Infeasible,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactResult<T = f64> {
    pub status: ExactStatus,
    /// Absent iff no feasible plan was found.
    pub best: Option<RoutePlan<T>>,
    /// `+inf` when `best` is absent.
    pub objective: T,
    pub lower_bound: T,
    pub nodes_explored: u64,
    /// Seconds.
    pub wall_time: f64,
    /// Successive incumbent objectives, non-increasing.
    pub incumbent_history: Vec<T>,
}

/// One decision on the path from the root. `node == 0` closes `route`.
#[derive(Debug)]
struct Step {
    route: u32,
    node: u32,
    prev: Option<Arc<Step>>,
}

#[derive(Clone, Copy, Debug)]
struct RouteState<T> {
    /// 0-based index of the last stop; 0 is the depot.
    end: u32,
    customers: u32,
    /// 0-based index of the first customer, 0 while empty.
    first: u32,
    length: T,
    closed: bool,
}

/// A set of partially built routes.
#[derive(Clone, Debug)]
pub struct SearchNode<T> {
    routes: Vec<RouteState<T>>,
    visited: Vec<u64>,
    unvisited: usize,
    cost: T,
    bound: T,
    depth: u32,
    trail: Option<Arc<Step>>,
}

impl<T: Scalar> SearchNode<T> {
    /// Cost of the arcs fixed so far.
    pub fn cost(&self) -> T {
        self.cost
    }

    pub fn lower_bound(&self) -> T {
        self.bound
    }

    /// All routes closed and every customer visited.
    pub fn is_complete(&self) -> bool {
        self.unvisited == 0 && self.routes.iter().all(|r| r.closed)
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    fn is_visited(&self, v: usize) -> bool {
        self.visited[v / 64] >> (v % 64) & 1 == 1
    }

    fn mark(&mut self, v: usize) {
        self.visited[v / 64] |= 1 << (v % 64);
    }

    /// Open routes as 1-based labels; closed routes end with the depot.
    pub fn routes(&self) -> Vec<Vec<usize>> {
        let mut steps = Vec::with_capacity(self.depth as usize);
        let mut cursor = self.trail.as_deref();
        while let Some(step) = cursor {
            steps.push((step.route as usize, step.node as usize));
            cursor = step.prev.as_deref();
        }
        let mut routes = vec![vec![DEPOT]; self.routes.len()];
        for &(r, v) in steps.iter().rev() {
            routes[r].push(v + 1);
        }
        routes
    }
}

/// Expansion rules and bound tables for one model.
#[derive(Debug)]
pub struct SearchTree<'m, 'a, T: Scalar> {
    model: &'m ExactModel<'a, T>,
    n: usize,
    /// For each node, the other nodes by ascending outgoing arc cost.
    by_out: Vec<Vec<u32>>,
    /// For each node, the other nodes by ascending incoming arc cost.
    by_in: Vec<Vec<u32>>,
}

impl<'m, 'a, T: Scalar> SearchTree<'m, 'a, T> {
    pub fn new(model: &'m ExactModel<'a, T>) -> Self {
        let inst = model.instance();
        let n = inst.n();
        let sorted = |key: &dyn Fn(usize) -> T, skip: usize| {
            let mut ids: Vec<u32> = (0..n as u32).filter(|&v| v as usize != skip).collect();
            ids.sort_by(|&a, &b| {
                key(a as usize)
                    .partial_cmp(&key(b as usize))
                    .unwrap_or(Ordering::Equal)
                    .then(a.cmp(&b))
            });
            ids
        };
        let by_out = (0..n).map(|i| sorted(&|j| inst.arc(i, j), i)).collect();
        let by_in = (0..n).map(|j| sorted(&|i| inst.arc(i, j), j)).collect();
        Self { model, n, by_out, by_in }
    }

    pub fn root(&self) -> Option<SearchNode<T>> {
        let m = self.model.salesmen();
        let mut node = SearchNode {
            routes: vec![
                RouteState { end: 0, customers: 0, first: 0, length: T::zero(), closed: false };
                m
            ],
            visited: vec![0; self.n.div_ceil(64)],
            unvisited: self.n - 1,
            cost: T::zero(),
            bound: T::zero(),
            depth: 0,
            trail: None,
        };
        node.mark(0);
        self.finish(node)
    }

    /// Open route with the fewest customers, lowest index on ties.
    fn active_route(&self, node: &SearchNode<T>) -> Option<usize> {
        node.routes
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.closed)
            .min_by_key(|(i, r)| (r.customers, *i))
            .map(|(i, _)| i)
    }

    /// Feasible children in branching order: customers by ascending arc cost, then closing.
    pub fn children(&self, node: &SearchNode<T>) -> Vec<SearchNode<T>> {
        let Some(r) = self.active_route(node) else {
            return Vec::new();
        };
        let inst = self.model.instance();
        let (min, max) = (self.model.min_customers() as u32, self.model.max_customers() as u32);
        let route = node.routes[r];
        let cap = self.model.cuts().map(|c| c.route_cap);
        let mut out = Vec::new();
        if route.customers < max {
            let from = route.end as usize;
            let floor = if route.customers == 0 && r > 0 { node.routes[r - 1].first } else { 0 };
            for &c in &self.by_out[from] {
                let cu = c as usize;
                if cu == 0 || node.is_visited(cu) || c <= floor {
                    continue;
                }
                let arc = inst.arc(from, cu);
                let length = route.length + arc;
                if cap.is_some_and(|h| length > h) {
                    continue;
                }
                let mut child = node.clone();
                child.mark(cu);
                child.unvisited -= 1;
                child.cost = node.cost + arc;
                let state = &mut child.routes[r];
                state.end = c;
                state.customers += 1;
                state.length = length;
                if state.first == 0 {
                    state.first = c;
                }
                child.depth += 1;
                child.trail = Some(Arc::new(Step { route: r as u32, node: c, prev: node.trail.clone() }));
                if let Some(done) = self.finish(child) {
                    out.push(done);
                }
            }
        }
        if route.customers >= min && route.customers >= 1 {
            let arc = inst.arc(route.end as usize, 0);
            let length = route.length + arc;
            if !cap.is_some_and(|h| length > h) {
                let mut child = node.clone();
                child.cost = node.cost + arc;
                child.routes[r].closed = true;
                child.routes[r].length = length;
                child.depth += 1;
                child.trail = Some(Arc::new(Step { route: r as u32, node: 0, prev: node.trail.clone() }));
                if let Some(done) = self.finish(child) {
                    out.push(done);
                }
            }
        }
        out
    }

    /// Checks capacity feasibility and attaches the bound; `None` if the node is dead.
    fn finish(&self, mut node: SearchNode<T>) -> Option<SearchNode<T>> {
        let (min, max) = (self.model.min_customers() as u32, self.model.max_customers() as u32);
        let (mut need, mut room) = (0usize, 0usize);
        for r in node.routes.iter().filter(|r| !r.closed) {
            need += min.saturating_sub(r.customers) as usize;
            room += (max - r.customers) as usize;
        }
        if need > node.unvisited || room < node.unvisited {
            return None;
        }
        node.bound = node.cost + self.completion_bound(&node)?;
        if let Some(cuts) = self.model.cuts() {
            if node.bound > cuts.total_cap {
                return None;
            }
        }
        Some(node)
    }

    /// Admissible estimate of the remaining cost: every completion uses one
    /// outgoing arc per unvisited customer and per open route end, and one
    /// incoming arc per unvisited customer and per depot return still owed.
    fn completion_bound(&self, node: &SearchNode<T>) -> Option<T> {
        let inst = self.model.instance();
        let (min, max) = (self.model.min_customers() as u32, self.model.max_customers() as u32);
        let open = || node.routes.iter().filter(|r| !r.closed);
        let free = |v: u32| v != 0 && !node.is_visited(v as usize);

        let mut outgoing = T::zero();
        let mut incoming = T::zero();
        for u in 1..self.n {
            if node.is_visited(u) {
                continue;
            }
            let next = self.by_out[u].iter().find(|&&v| v == 0 || free(v))?;
            outgoing = outgoing + inst.arc(u, *next as usize);
            let prev = self.by_in[u]
                .iter()
                .find(|&&v| free(v) || open().any(|r| r.end == v && r.customers < max))?;
            incoming = incoming + inst.arc(*prev as usize, u);
        }
        for r in open() {
            let can_close = r.customers >= min && r.customers >= 1;
            let can_extend = r.customers < max;
            let end = r.end as usize;
            let next = self.by_out[end]
                .iter()
                .find(|&&v| (v == 0 && can_close) || (can_extend && free(v)))?;
            outgoing = outgoing + inst.arc(end, *next as usize);
            let last = self.by_in[0]
                .iter()
                .find(|&&v| free(v) || (v == r.end && can_close))?;
            incoming = incoming + inst.arc(*last as usize, 0);
        }
        Some(if incoming > outgoing { incoming } else { outgoing })
    }
}

/// Incumbent costs are always plan totals, so the reported objective matches the pruning threshold.
struct Shared<T> {
    cost: T,
    best: Option<RoutePlan<T>>,
    history: Vec<T>,
}

impl<T: Scalar> Shared<T> {
    fn offer(&mut self, tree: &SearchTree<'_, '_, T>, node: &SearchNode<T>) {
        if node.cost >= self.cost {
            return;
        }
        let plan = evaluate_plan(tree.model.instance(), node.routes()).expect("search emits valid plans");
        if plan.total_distance() < self.cost {
            self.cost = plan.total_distance();
            self.history.push(self.cost);
            self.best = Some(plan);
        }
    }
}

struct Entry<T> {
    node: SearchNode<T>,
    seq: u64,
}

impl<T: Scalar> PartialEq for Entry<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<T: Scalar> Eq for Entry<T> {}

impl<T: Scalar> PartialOrd for Entry<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Scalar> Ord for Entry<T> {
    /// Max-heap order: lowest bound, then deepest, then earliest.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .node
            .bound
            .partial_cmp(&self.node.bound)
            .unwrap_or(Ordering::Equal)
            .then(self.node.depth.cmp(&other.node.depth))
            .then(other.seq.cmp(&self.seq))
    }
}

struct Outcome<T> {
    exhausted: bool,
    /// Smallest bound left open when the clock expired.
    open_bound: T,
    nodes: u64,
}

/// Exhausts the subtree under `start` depth-first. Returns `false` on timeout.
fn dive<T: Scalar>(
    tree: &SearchTree<'_, '_, T>,
    start: SearchNode<T>,
    shared: &Mutex<Shared<T>>,
    deadline: Option<Instant>,
    nodes: &mut u64,
) -> bool {
    let incumbent = || shared.lock().expect("incumbent lock").cost;
    let mut stack = vec![start];
    while let Some(node) = stack.pop() {
        if node.bound >= incumbent() {
            continue;
        }
        *nodes += 1;
        if nodes.is_multiple_of(CLOCK_CHECK_INTERVAL) && deadline.is_some_and(|d| Instant::now() >= d) {
            return false;
        }
        for child in tree.children(&node).into_iter().rev() {
            if child.is_complete() {
                shared.lock().expect("incumbent lock").offer(tree, &child);
            } else {
                stack.push(child);
            }
        }
    }
    true
}

/// Best-first from `start`; once `max_open` nodes are queued, the best node's
/// subtree is finished depth-first before the queue resumes.
fn best_first<T: Scalar>(
    tree: &SearchTree<'_, '_, T>,
    start: SearchNode<T>,
    shared: &Mutex<Shared<T>>,
    deadline: Option<Instant>,
    max_open: usize,
) -> Outcome<T> {
    let incumbent = || shared.lock().expect("incumbent lock").cost;
    let mut heap = BinaryHeap::new();
    let mut seq = 0u64;
    let mut nodes = 0u64;
    heap.push(Entry { node: start, seq });
    while let Some(Entry { node, .. }) = heap.pop() {
        if node.bound >= incumbent() {
            break;
        }
        let open_bound = node.bound;
        if heap.len() >= max_open {
            if dive(tree, node, shared, deadline, &mut nodes) {
                continue;
            }
            return Outcome { exhausted: false, open_bound, nodes };
        }
        nodes += 1;
        if nodes.is_multiple_of(CLOCK_CHECK_INTERVAL) && deadline.is_some_and(|d| Instant::now() >= d) {
            return Outcome { exhausted: false, open_bound, nodes };
        }
        for child in tree.children(&node) {
            if child.is_complete() {
                shared.lock().expect("incumbent lock").offer(tree, &child);
            } else if child.bound < incumbent() {
                seq += 1;
                heap.push(Entry { node: child, seq });
            }
        }
    }
    Outcome { exhausted: true, open_bound: T::infinity(), nodes }
}

/// Splits the tree breadth-first until there are enough independent subtrees.
fn frontier<T: Scalar>(
    tree: &SearchTree<'_, '_, T>,
    root: SearchNode<T>,
    target: usize,
    shared: &Mutex<Shared<T>>,
) -> (Vec<SearchNode<T>>, u64) {
    let mut queue = VecDeque::from([root]);
    let mut nodes = 0;
    while queue.len() < target {
        let Some(node) = queue.pop_front() else { break };
        nodes += 1;
        for child in tree.children(&node) {
            if child.is_complete() {
                shared.lock().expect("incumbent lock").offer(tree, &child);
            } else {
                queue.push_back(child);
            }
        }
    }
    (queue.into(), nodes)
}

/// Solves the model to optimality or until `time_limit` seconds elapse.
/// An infinite limit disables the clock.
pub fn solve_exact<T: Scalar>(model: &ExactModel<'_, T>, time_limit: f64) -> Result<ExactResult<T>, ExactError> {
    if time_limit.is_nan() || time_limit <= 0.0 {
        return Err(ExactError::InvalidTimeLimit(time_limit));
    }
    let started = Instant::now();
    let deadline = Duration::try_from_secs_f64(time_limit).ok().and_then(|d| started.checked_add(d));
    let shared = Mutex::new(match model.warm_start() {
        Some(plan) => Shared {
            cost: plan.total_distance(),
            best: Some(plan.clone()),
            history: vec![plan.total_distance()],
        },
        None => Shared { cost: T::infinity(), best: None, history: Vec::new() },
    });
    let tree = SearchTree::new(model);
    let mut nodes = 0;
    let mut exhausted = true;
    let mut open_bound = T::infinity();
    if let Some(root) = tree.root() {
        let threads = model.threads();
        let outcomes = if threads <= 1 {
            vec![best_first(&tree, root, &shared, deadline, MAX_OPEN_NODES)]
        } else {
            let (parts, split_nodes) = frontier(&tree, root, 4 * threads, &shared);
            nodes += split_nodes;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| ExactError::ThreadPool(e.to_string()))?;
            pool.install(|| {
                parts
                    .into_par_iter()
                    .map(|part| best_first(&tree, part, &shared, deadline, MAX_OPEN_NODES / threads))
                    .collect::<Vec<_>>()
            })
        };
        for o in outcomes {
            nodes += o.nodes;
            exhausted &= o.exhausted;
            if o.open_bound < open_bound {
                open_bound = o.open_bound;
            }
        }
    }
    let shared = shared.into_inner().expect("incumbent lock");
    let best = shared.best;
    let objective = best.as_ref().map_or(T::infinity(), |p| p.total_distance());
    let (status, lower_bound) = match (exhausted, best.is_some()) {
        (true, true) => (ExactStatus::Optimal, objective),
        (true, false) => (ExactStatus::Infeasible, T::infinity()),
        (false, true) => (ExactStatus::FeasibleTimeLimit, open_bound.min(objective)),
        (false, false) => (ExactStatus::NoSolutionTimeLimit, open_bound),
    };
    Ok(ExactResult {
        status,
        best,
        objective,
        lower_bound,
        nodes_explored: nodes,
        wall_time: started.elapsed().as_secs_f64(),
        incumbent_history: shared.history,
    })
}
