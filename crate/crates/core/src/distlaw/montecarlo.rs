//! Monte Carlo estimators matching the closed forms.
//!
//! Repetition `i` belongs to chunk `i / CHUNK_REPS`, and each chunk draws from
//! `SeededRng::new(derive_seed(seed, &[chunk]))`. Chunks run in parallel and
//! merge in chunk order, so every output depends on the seed alone.
//!
//! Per repetition the reference point is drawn first, then the other points
//! in order; a point draws its coordinates in axis order.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::LawError;
use crate::rng::{derive_seed, SeededRng};

/// Repetitions per independently seeded chunk.
pub const CHUNK_REPS: u64 = 8192;
/// Bins in every reported histogram.
pub const HISTOGRAM_BINS: usize = 100;
/// Largest ball dimension accepted by the rejection sampler.
pub const MAX_BALL_DIMENSION: u32 = 10;

/// Region points are drawn from.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Domain {
    /// `U(0, 1)`.
    UnitInterval,
    /// Integers `1..=X`, uniform.
    IntegerRange(u64),
    /// Uniform in `[0, width] x [0, height]`.
    Rectangle { width: f64, height: f64 },
    /// Uniform in the `dim`-ball of the given radius, by rejection from its bounding cube.
    Ball { dim: u32, radius: f64 },
}

impl Domain {
    pub fn validate(&self) -> Result<(), LawError> {
        let bad = |msg: String| Err(LawError::InvalidDomain(msg));
        match *self {
            Domain::UnitInterval => Ok(()),
            Domain::IntegerRange(0) => bad("integer range needs X >= 1".into()),
            Domain::IntegerRange(_) => Ok(()),
            Domain::Rectangle { width, height } if !(width > 0.0 && height > 0.0) => {
                bad(format!("rectangle sides must be positive, got {width} x {height}"))
            }
            Domain::Rectangle { .. } => Ok(()),
            Domain::Ball { dim, .. } if !(1..=MAX_BALL_DIMENSION).contains(&dim) => {
                bad(format!("ball dimension must be in 1..={MAX_BALL_DIMENSION}, got {dim}"))
            }
            Domain::Ball { radius, .. } if !(radius > 0.0) => bad(format!("ball radius must be positive, got {radius}")),
            Domain::Ball { .. } => Ok(()),
        }
    }

    pub fn dimension(&self) -> usize {
        match *self {
            Domain::UnitInterval | Domain::IntegerRange(_) => 1,
            Domain::Rectangle { .. } => 2,
            Domain::Ball { dim, .. } => dim as usize,
        }
    }

    fn draw(&self, rng: &mut SeededRng, out: &mut [f64]) {
        match *self {
            Domain::UnitInterval => out[0] = rng.unit(),
            Domain::IntegerRange(x) => out[0] = rng.int_inclusive(1, x) as f64,
            Domain::Rectangle { width, height } => {
                out[0] = rng.unit() * width;
                out[1] = rng.unit() * height;
            }
            Domain::Ball { radius, .. } => loop {
                for c in out.iter_mut() {
                    *c = (2.0 * rng.unit() - 1.0) * radius;
                }
                if out.iter().map(|c| c * c).sum::<f64>() <= radius * radius {
                    break;
                }
            },
        }
    }
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Equal-width bins over `[0, max observed]`; `edges.len() == counts.len() + 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
}

impl Histogram {
    fn from_values(values: &[f64]) -> Self {
        let max = values.iter().copied().fold(0.0, f64::max);
        let top = if max > 0.0 { max } else { 1.0 };
        let width = top / HISTOGRAM_BINS as f64;
        let edges = (0..=HISTOGRAM_BINS).map(|i| if i == HISTOGRAM_BINS { top } else { i as f64 * width }).collect();
        let mut counts = vec![0u64; HISTOGRAM_BINS];
        for &v in values {
            let bin = ((v / width) as usize).min(HISTOGRAM_BINS - 1);
            counts[bin] += 1;
        }
        Self { edges, counts }
    }

    /// `bin_lo,bin_hi,count` with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("bin_lo,bin_hi,count\n");
        for (i, c) in self.counts.iter().enumerate() {
            writeln!(out, "{},{},{}", self.edges[i], self.edges[i + 1], c).expect("write to string");
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonteCarloResult {
    pub mean: f64,
    /// Sample standard deviation over `sqrt(reps)`; zero for a single repetition.
    pub std_error: f64,
    pub histogram: Histogram,
    pub reps: u64,
    pub seed: u64,
}

struct Chunk {
    values: Vec<f64>,
    sum: f64,
}

fn simulate<F>(reps: u64, seed: u64, sample: F) -> Result<MonteCarloResult, LawError>
where
    F: Fn(&mut SeededRng) -> f64 + Sync,
{
    if reps < 1 {
        return Err(LawError::TooSmall { what: "repetitions", min: 1, value: reps });
    }
    let chunks: Vec<Chunk> = (0..reps.div_ceil(CHUNK_REPS))
        .into_par_iter()
        .map(|chunk| {
            let mut rng = SeededRng::new(derive_seed(seed, &[chunk]));
            let len = CHUNK_REPS.min(reps - chunk * CHUNK_REPS);
            let values: Vec<f64> = (0..len).map(|_| sample(&mut rng)).collect();
            let sum = values.iter().sum();
            Chunk { values, sum }
        })
        .collect();
    let mean = chunks.iter().map(|c| c.sum).sum::<f64>() / reps as f64;
    let values: Vec<f64> = chunks.into_iter().flat_map(|c| c.values).collect();
    let std_error = if reps > 1 {
        let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
        (ss / (reps - 1) as f64).sqrt() / (reps as f64).sqrt()
    } else {
        0.0
    };
    Ok(MonteCarloResult { mean, std_error, histogram: Histogram::from_values(&values), reps, seed })
}

/// Distance between two independent uniform points of `domain`, `reps` times.
pub fn simulate_pair_dist(reps: u64, domain: Domain, seed: u64) -> Result<MonteCarloResult, LawError> {
    simulate_min_dist(1, reps, domain, seed)
}

/// Distance from a uniform point to the nearest of `n` further uniform points, `reps` times.
pub fn simulate_min_dist(n: usize, reps: u64, domain: Domain, seed: u64) -> Result<MonteCarloResult, LawError> {
    if n < 1 {
        return Err(LawError::TooSmall { what: "point count", min: 1, value: 0 });
    }
    domain.validate()?;
    let dim = domain.dimension();
    simulate(reps, seed, |rng| {
        let mut x = vec![0.0; dim];
        let mut y = vec![0.0; dim];
        domain.draw(rng, &mut x);
        let mut best = f64::INFINITY;
        for _ in 0..n {
            domain.draw(rng, &mut y);
            best = best.min(distance(&x, &y));
        }
        best
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distlaw::{expected_pair_distance_interval, min_dist_expectation};

    #[test]
    fn unit_interval_pair_distance() {
        let r = simulate_pair_dist(100_000, Domain::UnitInterval, 1).unwrap();
        assert!((r.mean - 1.0 / 3.0).abs() < 0.005, "{}", r.mean);
        assert!((r.mean - expected_pair_distance_interval(1.0).unwrap()).abs() < 3.0 * r.std_error);
        assert_eq!(r.histogram.counts.iter().sum::<u64>(), 100_000);
        // Triangular density: counts fall across coarse groups of bins.
        let groups: Vec<u64> = r.histogram.counts.chunks(10).map(|c| c.iter().sum()).collect();
        assert!(groups.windows(2).all(|w| w[1] < w[0]), "{groups:?}");
    }

    #[test]
    fn degenerate_integer_range() {
        let r = simulate_pair_dist(100_000, Domain::IntegerRange(1), 3).unwrap();
        assert_eq!(r.mean, 0.0);
        assert_eq!(r.histogram.counts[0], 100_000);
        assert_eq!(*r.histogram.edges.last().unwrap(), 1.0);
    }

    #[test]
    fn single_point_min_is_pair_distance() {
        let r = simulate_min_dist(1, 100_000, Domain::UnitInterval, 9).unwrap();
        assert!((r.mean - 1.0 / 3.0).abs() < 3.0 * r.std_error);
    }

    #[test]
    fn two_point_min_matches_law() {
        let r = simulate_min_dist(2, 200_000, Domain::UnitInterval, 4).unwrap();
        let law: f64 = min_dist_expectation(2).unwrap();
        assert!((r.mean - law).abs() / law < 0.05, "{} vs {law}", r.mean);
    }

    #[test]
    fn seeded_and_chunk_stable() {
        let a = simulate_pair_dist(20_000, Domain::IntegerRange(100), 11).unwrap();
        let b = simulate_pair_dist(20_000, Domain::IntegerRange(100), 11).unwrap();
        assert_eq!(a, b);
        let c = simulate_pair_dist(20_000, Domain::IntegerRange(100), 12).unwrap();
        assert_ne!(a.mean, c.mean);
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let d = one.install(|| simulate_pair_dist(20_000, Domain::IntegerRange(100), 11).unwrap());
        assert_eq!(a, d);
    }

    #[test]
    fn mean_within_histogram_range() {
        for domain in [
            Domain::UnitInterval,
            Domain::IntegerRange(100),
            Domain::Rectangle { width: 3.0, height: 4.0 },
            Domain::Ball { dim: 3, radius: 1.0 },
        ] {
            let r = simulate_min_dist(3, 5_000, domain, 2).unwrap();
            let h = &r.histogram;
            assert!(r.mean >= h.edges[0] && r.mean <= *h.edges.last().unwrap());
            assert_eq!(h.edges.len(), h.counts.len() + 1);
            assert_eq!(h.counts.iter().sum::<u64>(), r.reps);
        }
    }

    #[test]
    fn invalid_inputs() {
        assert!(simulate_pair_dist(0, Domain::UnitInterval, 1).is_err());
        assert!(simulate_min_dist(0, 10, Domain::UnitInterval, 1).is_err());
        assert!(simulate_pair_dist(10, Domain::IntegerRange(0), 1).is_err());
        assert!(simulate_pair_dist(10, Domain::Rectangle { width: 0.0, height: 1.0 }, 1).is_err());
        assert!(simulate_pair_dist(10, Domain::Ball { dim: 0, radius: 1.0 }, 1).is_err());
        assert!(simulate_pair_dist(10, Domain::Ball { dim: 11, radius: 1.0 }, 1).is_err());
        assert!(simulate_pair_dist(10, Domain::Ball { dim: 2, radius: -1.0 }, 1).is_err());
    }

    #[test]
    fn single_rep_has_no_spread() {
        let r = simulate_pair_dist(1, Domain::UnitInterval, 5).unwrap();
        assert_eq!(r.std_error, 0.0);
        assert_eq!(r.reps, 1);
    }

    #[test]
    fn csv_layout() {
        let r = simulate_pair_dist(1000, Domain::UnitInterval, 5).unwrap();
        let csv = r.histogram.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "bin_lo,bin_hi,count");
        assert_eq!(lines.len(), HISTOGRAM_BINS + 1);
        assert!(lines[1].starts_with("0,"));
    }
}
