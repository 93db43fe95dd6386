//! Seeded heuristic experiments over a grid of node counts and fleet sizes.
//!
//! Sample `k` of node count `t` is the instance generated with seed
//! `derive_seed(base, &[t, k])` and is shared by every `m` and algorithm.
//! With `independent` set, each `m` draws its own instance from
//! `derive_seed(base, &[t, k, m])`.

use mtsp_core::distlaw::SummaryRow;
use mtsp_core::heuristics::Heuristic;
use mtsp_core::instance::{generate_uniform_instance, GridSpec, Instance};
use mtsp_core::rng::derive_seed;
use rayon::prelude::*;
use serde::Serialize;

use crate::BenchError;

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    /// Node counts, depot included.
    pub sizes: Vec<usize>,
    pub m_values: Vec<usize>,
    pub samples: usize,
    pub grid_max: u64,
    pub seed: u64,
    pub algorithms: Vec<Heuristic>,
    pub independent: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            sizes: (1..=10).map(|k| 50 * k).collect(),
            m_values: (2..=7).collect(),
            samples: 30,
            grid_max: 100,
            seed: 1,
            algorithms: Heuristic::ALL.to_vec(),
            independent: false,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), BenchError> {
        let fail = |msg: &str| Err(BenchError::Config(msg.into()));
        if self.samples < 2 {
            return fail("samples must be at least 2");
        }
        if self.sizes.is_empty() {
            return fail("node sizes are empty");
        }
        if self.m_values.is_empty() {
            return fail("salesman counts are empty");
        }
        if self.algorithms.is_empty() {
            return fail("no algorithms selected");
        }
        if self.m_values.contains(&0) {
            return fail("salesman counts must be positive");
        }
        if let Some(&t) = self.sizes.iter().find(|&&t| self.m_values.iter().any(|&m| m >= t)) {
            return Err(BenchError::Config(format!("node count {t} leaves a salesman without customers")));
        }
        Ok(())
    }

    fn instance_seed(&self, t: usize, sample: usize, m: usize) -> u64 {
        if self.independent {
            derive_seed(self.seed, &[t as u64, sample as u64, m as u64])
        } else {
            derive_seed(self.seed, &[t as u64, sample as u64])
        }
    }
}

/// Route total of one heuristic on one sampled instance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleRecord {
    pub t: usize,
    pub m: usize,
    pub algorithm: Heuristic,
    pub sample: usize,
    pub seed: u64,
    pub total: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentOutput {
    /// Ordered by `t`, then `m`, then algorithm as configured.
    pub rows: Vec<SummaryRow>,
    pub samples: Vec<SampleRecord>,
    /// Heuristic runs performed.
    pub solves: u64,
}

fn generate(config: &ExperimentConfig, t: usize, seed: u64) -> Result<Instance<f64>, BenchError> {
    Ok(generate_uniform_instance(GridSpec { n: t, grid_max: config.grid_max, seed })?)
}

fn run_sample(config: &ExperimentConfig, t: usize, sample: usize) -> Result<Vec<SampleRecord>, BenchError> {
    let shared = if config.independent { None } else { Some(generate(config, t, config.instance_seed(t, sample, 0))?) };
    let mut out = Vec::with_capacity(config.m_values.len() * config.algorithms.len());
    for &m in &config.m_values {
        let seed = config.instance_seed(t, sample, m);
        let own;
        let instance = match &shared {
            Some(inst) => inst,
            None => {
                own = generate(config, t, seed)?;
                &own
            }
        };
        for &algorithm in &config.algorithms {
            let total = algorithm.run(instance, m)?.total_distance();
            out.push(SampleRecord { t, m, algorithm, sample, seed, total });
        }
    }
    Ok(out)
}

fn mean_and_std(values: &[f64]) -> (f64, f64) {
    let k = values.len() as f64;
    let mean = values.iter().sum::<f64>() / k;
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    (mean, (ss / (k - 1.0)).sqrt())
}

/// Runs every `(t, sample)` job in parallel and aggregates per `(t, m, algorithm)`.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutput, BenchError> {
    config.validate()?;
    let jobs: Vec<(usize, usize)> = config
        .sizes
        .iter()
        .flat_map(|&t| (0..config.samples).map(move |k| (t, k)))
        .collect();
    let per_job = jobs
        .par_iter()
        .map(|&(t, k)| run_sample(config, t, k))
        .collect::<Result<Vec<_>, _>>()?;
    let samples: Vec<SampleRecord> = per_job.into_iter().flatten().collect();
    let mut rows = Vec::new();
    for &t in &config.sizes {
        for &m in &config.m_values {
            for &algorithm in &config.algorithms {
                let totals: Vec<f64> = samples
                    .iter()
                    .filter(|s| s.t == t && s.m == m && s.algorithm == algorithm)
                    .map(|s| s.total)
                    .collect();
                let (mean, std) = mean_and_std(&totals);
                rows.push(SummaryRow {
                    t,
                    m,
                    algorithm: algorithm.as_str().to_string(),
                    mean,
                    std,
                    samples: totals.len(),
                });
            }
        }
    }
    Ok(ExperimentOutput { solves: samples.len() as u64, rows, samples })
}
