//! mTSP instances, distance matrices and route plan evaluation.
//!
//! Nodes carry 1-based labels in every public plan (`1` is the depot), and
//! 0-based indices when addressing the matrix directly through
//! [`Instance::arc`].

mod error;
pub mod fixtures;
mod format;

use serde::Serialize;

use crate::rng::SeededRng;
use crate::scalar::{close_rel, Scalar};

pub use error::InstanceError;
pub use format::{parse_csv, parse_tsplib, parse_tsplib_with, to_csv, to_tsplib};

/// The 1-based label of the depot.
pub const DEPOT: usize = 1;

/// Relative tolerance used when checking stored distances against coordinates.
const COORD_CHECK_REL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn distance(&self, other: &Self) -> T {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// How Euclidean distances are post-processed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum Rounding {
    /// Real-valued distances.
    #[default]
    None,
    /// TSPLIB `nint`: `floor(d + 0.5)`.
    NearestInteger,
}

impl Rounding {
    fn apply<T: Scalar>(self, d: T) -> T {
        match self {
            Rounding::None => d,
            Rounding::NearestInteger => (d + T::lit(0.5)).floor(),
        }
    }
}

/// Dense row-major `n x n` distance matrix with an infinite diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> DistanceMatrix<T> {
    /// Builds a matrix from rows, forcing the diagonal to the sentinel.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, InstanceError> {
        let n = rows.len();
        if n < 3 {
            return Err(InstanceError::TooFewNodes(n));
        }
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(InstanceError::RaggedMatrix {
                    row: i + 1,
                    expected: n,
                    found: row.len(),
                });
            }
            for (j, d) in row.into_iter().enumerate() {
                if i == j {
                    data.push(T::infinity());
                } else if !d.is_finite() || d < T::zero() {
                    return Err(InstanceError::InvalidDistance { from: i + 1, to: j + 1 });
                } else {
                    data.push(d);
                }
            }
        }
        Ok(Self { n, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Distance between 0-based indices.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.n + j]
    }

    /// Row `i` as a slice.
    #[inline]
    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }
}

/// Pairwise Euclidean distances of `coords`.
pub fn euclidean_matrix<T: Scalar>(
    coords: &[Point<T>],
    rounding: Rounding,
) -> Result<DistanceMatrix<T>, InstanceError> {
    let n = coords.len();
    if n < 3 {
        return Err(InstanceError::TooFewNodes(n));
    }
    let mut data = vec![T::zero(); n * n];
    for i in 0..n {
        data[i * n + i] = T::infinity();
        for j in i + 1..n {
            let d = rounding.apply(coords[i].distance(&coords[j]));
            if !d.is_finite() {
                return Err(InstanceError::InvalidDistance { from: i + 1, to: j + 1 });
            }
            data[i * n + j] = d;
            data[j * n + i] = d;
        }
    }
    Ok(DistanceMatrix { n, data })
}

/// A single-depot mTSP instance. Node 1 is the depot.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance<T = f64> {
    name: String,
    coords: Option<Vec<Point<T>>>,
    rounding: Rounding,
    matrix: DistanceMatrix<T>,
}

impl<T: Scalar> Instance<T> {
    pub fn from_coords(
        name: impl Into<String>,
        coords: Vec<Point<T>>,
        rounding: Rounding,
    ) -> Result<Self, InstanceError> {
        let matrix = euclidean_matrix(&coords, rounding)?;
        Ok(Self {
            name: name.into(),
            coords: Some(coords),
            rounding,
            matrix,
        })
    }

    pub fn from_matrix(name: impl Into<String>, rows: Vec<Vec<T>>) -> Result<Self, InstanceError> {
        Ok(Self {
            name: name.into(),
            coords: None,
            rounding: Rounding::None,
            matrix: DistanceMatrix::from_rows(rows)?,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Node count including the depot.
    pub fn n(&self) -> usize {
        self.matrix.n
    }

    /// Number of customers (`n - 1`).
    pub fn customers(&self) -> usize {
        self.matrix.n - 1
    }

    pub fn coords(&self) -> Option<&[Point<T>]> {
        self.coords.as_deref()
    }

    pub fn rounding(&self) -> Rounding {
        self.rounding
    }

    pub fn matrix(&self) -> &DistanceMatrix<T> {
        &self.matrix
    }

    /// Distance between 0-based indices (label minus one).
    #[inline]
    pub fn arc(&self, from: usize, to: usize) -> T {
        self.matrix.get(from, to)
    }

    /// Checks every type invariant; constructors already enforce them.
    pub fn validate(&self) -> Result<(), InstanceError> {
        let n = self.n();
        if n < 3 {
            return Err(InstanceError::TooFewNodes(n));
        }
        for i in 0..n {
            for j in 0..n {
                let d = self.arc(i, j);
                let ok = if i == j {
                    d.is_infinite() && d > T::zero()
                } else {
                    d.is_finite() && d >= T::zero()
                };
                if !ok {
                    return Err(InstanceError::InvalidDistance { from: i + 1, to: j + 1 });
                }
            }
        }
        if let Some(coords) = &self.coords {
            if coords.len() != n {
                return Err(InstanceError::CoordCount { expected: n, found: coords.len() });
            }
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    let expect = self.rounding.apply(coords[i].distance(&coords[j]));
                    if !close_rel(self.arc(i, j), expect, COORD_CHECK_REL) {
                        return Err(InstanceError::CoordMismatch { from: i + 1, to: j + 1 });
                    }
                }
            }
        }
        Ok(())
    }

    /// Copy with a new name.
    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

/// Parameters of a uniformly random integer-grid instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GridSpec {
    pub n: usize,
    /// Coordinates are drawn from `{1..grid_max}` on both axes.
    pub grid_max: u64,
    pub seed: u64,
}

/// Draws `spec.n` points uniformly from `{1..grid_max}^2`.
///
/// Draw order: for each node in label order, `x` then `y`, each one
/// [`SeededRng::int_inclusive`] call on a stream seeded with `spec.seed`.
pub fn generate_uniform_instance<T: Scalar>(spec: GridSpec) -> Result<Instance<T>, InstanceError> {
    if spec.n < 3 {
        return Err(InstanceError::TooFewNodes(spec.n));
    }
    if spec.grid_max < 2 {
        return Err(InstanceError::GridTooSmall(spec.grid_max));
    }
    let mut rng = SeededRng::new(spec.seed);
    let coords = (0..spec.n)
        .map(|_| {
            let x = rng.int_inclusive(1, spec.grid_max);
            let y = rng.int_inclusive(1, spec.grid_max);
            Point::new(T::lit(x as f64), T::lit(y as f64))
        })
        .collect();
    Instance::from_coords(
        format!("uniform-n{}-x{}-s{}", spec.n, spec.grid_max, spec.seed),
        coords,
        Rounding::None,
    )
}

/// Closed tours for `m` salesmen with their distances.
///
/// Routes hold 1-based node labels and start and end at the depot.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RoutePlan<T = f64> {
    routes: Vec<Vec<usize>>,
    per_route_distance: Vec<T>,
    total_distance: T,
}

impl<T: Scalar> RoutePlan<T> {
    pub fn routes(&self) -> &[Vec<usize>] {
        &self.routes
    }

    pub fn per_route_distance(&self) -> &[T] {
        &self.per_route_distance
    }

    pub fn total_distance(&self) -> T {
        self.total_distance
    }

    pub fn salesmen(&self) -> usize {
        self.routes.len()
    }

    /// Customers on each route (depot visits excluded).
    pub fn customers_per_route(&self) -> Vec<usize> {
        self.routes.iter().map(|r| r.len().saturating_sub(2)).collect()
    }

    /// Longest single route.
    pub fn max_route_distance(&self) -> T {
        self.per_route_distance
            .iter()
            .copied()
            .fold(T::zero(), T::max)
    }

    pub fn into_routes(self) -> Vec<Vec<usize>> {
        self.routes
    }
}

/// Validates `routes` against `instance` and computes their closed-loop lengths.
pub fn evaluate_plan<T: Scalar>(
    instance: &Instance<T>,
    routes: Vec<Vec<usize>>,
) -> Result<RoutePlan<T>, InstanceError> {
    let n = instance.n();
    let mut seen = vec![false; n + 1];
    for (k, route) in routes.iter().enumerate() {
        if route.len() < 2 || route[0] != DEPOT || route[route.len() - 1] != DEPOT {
            return Err(InstanceError::RouteEndpoints { route: k + 1 });
        }
        for &node in &route[1..route.len() - 1] {
            if node == DEPOT {
                return Err(InstanceError::DepotInsideRoute { route: k + 1 });
            }
            if node == 0 || node > n {
                return Err(InstanceError::UnknownNode { node, n });
            }
            if seen[node] {
                return Err(InstanceError::DuplicateNode { node });
            }
            seen[node] = true;
        }
    }
    if let Some(node) = (2..=n).find(|&v| !seen[v]) {
        return Err(InstanceError::MissingNode { node });
    }
    let per_route_distance: Vec<T> = routes
        .iter()
        .map(|r| {
            r.windows(2)
                .map(|w| instance.arc(w[0] - 1, w[1] - 1))
                .fold(T::zero(), |acc, d| acc + d)
        })
        .collect();
    let total_distance = per_route_distance.iter().fold(T::zero(), |acc, &d| acc + d);
    Ok(RoutePlan {
        routes,
        per_route_distance,
        total_distance,
    })
}
