//! Distance-law pipeline: per-salesman increment, power fit, predictions.

use mtsp_core::distlaw::{delta_estimate, fit_power_law, DeltaEstimate, DistanceLaw, PowerFit, SummaryRow};
use serde::Serialize;

use crate::BenchError;

const TABLE3_CSV: &str = include_str!("../data/table3.csv");

/// Published heuristic summary table: 10 node counts x 6 fleet sizes x 2 heuristics.
pub fn table3_rows() -> Vec<SummaryRow> {
    read_summary_csv(TABLE3_CSV.as_bytes()).expect("embedded summary table parses")
}

/// Reads rows with header `t,m,algorithm,mean,std,samples`.
pub fn read_summary_csv<R: std::io::Read>(reader: R) -> Result<Vec<SummaryRow>, BenchError> {
    let mut rdr = csv::Reader::from_reader(reader);
    let rows = rdr.deserialize().collect::<Result<Vec<SummaryRow>, _>>()?;
    for row in &rows {
        if row.samples < 2 || !(row.std >= 0.0) {
            return Err(BenchError::Config(format!(
                "row t = {}, m = {} needs samples >= 2 and std >= 0",
                row.t, row.m
            )));
        }
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlgorithmLaw {
    pub algorithm: String,
    pub delta: DeltaEstimate,
    /// Fit of the `m = 2` means against `t`.
    pub fit: PowerFit,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PredictionRow {
    pub t: usize,
    pub m: usize,
    pub algorithm: String,
    pub observed: f64,
    /// Published law.
    pub published: f64,
    pub published_deviation_pct: f64,
    /// Law refitted to this algorithm's rows.
    pub refit: f64,
    pub refit_deviation_pct: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LawReport {
    pub laws: Vec<AlgorithmLaw>,
    pub predictions: Vec<PredictionRow>,
}

impl LawReport {
    pub fn law(&self, algorithm: &str) -> Option<&AlgorithmLaw> {
        self.laws.iter().find(|l| l.algorithm == algorithm)
    }

    /// Largest absolute published-law deviation, in percent.
    pub fn max_published_deviation(&self) -> f64 {
        self.predictions.iter().map(|p| p.published_deviation_pct.abs()).fold(0.0, f64::max)
    }

    pub fn max_refit_deviation(&self) -> f64 {
        self.predictions.iter().map(|p| p.refit_deviation_pct.abs()).fold(0.0, f64::max)
    }
}

fn pct(predicted: f64, observed: f64) -> f64 {
    100.0 * (predicted - observed) / observed
}

/// Runs the pipeline separately for each algorithm in order of first appearance.
/// Rows with `m < 2` are ignored.
pub fn law_pipeline(rows: &[SummaryRow]) -> Result<LawReport, BenchError> {
    let rows: Vec<&SummaryRow> = rows.iter().filter(|r| r.m >= 2).collect();
    let mut algorithms: Vec<&str> = Vec::new();
    for r in &rows {
        if !algorithms.contains(&r.algorithm.as_str()) {
            algorithms.push(&r.algorithm);
        }
    }
    if algorithms.is_empty() {
        return Err(BenchError::Config("no rows with at least two salesmen".into()));
    }
    let published = DistanceLaw::<f64>::published();
    let mut laws = Vec::new();
    let mut predictions = Vec::new();
    for algorithm in algorithms {
        let own: Vec<SummaryRow> = rows.iter().filter(|r| r.algorithm == algorithm).map(|r| (*r).clone()).collect();
        let delta = delta_estimate(&own)?;
        let column: Vec<(f64, f64)> = own.iter().filter(|r| r.m == 2).map(|r| (r.t as f64, r.mean)).collect();
        let fit = fit_power_law(&column)?;
        let refit = DistanceLaw::from_fit(&fit, delta.delta);
        for r in &own {
            let p = published.predict(r.t, r.m)?;
            let q = refit.predict(r.t, r.m)?;
            predictions.push(PredictionRow {
                t: r.t,
                m: r.m,
                algorithm: algorithm.to_string(),
                observed: r.mean,
                published: p,
                published_deviation_pct: pct(p, r.mean),
                refit: q,
                refit_deviation_pct: pct(q, r.mean),
            });
        }
        laws.push(AlgorithmLaw { algorithm: algorithm.to_string(), delta, fit });
    }
    Ok(LawReport { laws, predictions })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table3_shape() {
        let rows = table3_rows();
        assert_eq!(rows.len(), 120);
        assert!(rows.iter().all(|r| r.samples == 30));
    }

    #[test]
    fn table3_deltas() {
        let report = law_pipeline(&table3_rows()).unwrap();
        let closest = report.law("closest").unwrap();
        let nearest = report.law("nearest").unwrap();
        assert!((closest.delta.delta - 90.40).abs() < 0.05, "{}", closest.delta.delta);
        assert!((nearest.delta.delta - 88.09).abs() < 0.05, "{}", nearest.delta.delta);
        assert!((closest.delta.std - 16.5).abs() < 0.05);
        assert!((nearest.delta.std - 13.0).abs() < 0.05);
        assert!((120.0..=160.0).contains(&closest.fit.coefficient));
        assert!((0.40..=0.48).contains(&closest.fit.exponent));
    }

    #[test]
    fn synthetic_rows_have_no_deviation() {
        let rows: Vec<SummaryRow> = (1..=5)
            .flat_map(|k| {
                (2..=6).map(move |m| SummaryRow {
                    t: 50 * k,
                    m,
                    algorithm: "closest".into(),
                    mean: DistanceLaw::<f64>::published().predict(50 * k, m).unwrap(),
                    std: 1.0,
                    samples: 30,
                })
            })
            .collect();
        let report = law_pipeline(&rows).unwrap();
        assert!(report.max_published_deviation() < 1e-6);
        assert!(report.max_refit_deviation() < 1e-6);
    }

    #[test]
    fn incomplete_grid_rejected() {
        let mut rows = table3_rows();
        rows.retain(|r| !(r.t == 250 && r.m == 4 && r.algorithm == "nearest"));
        assert!(matches!(law_pipeline(&rows), Err(BenchError::Law(_))));
    }

    #[test]
    fn rejects_bad_csv_rows() {
        let text = "t,m,algorithm,mean,std,samples\n50,2,closest,1.0,-1.0,30\n";
        assert!(read_summary_csv(text.as_bytes()).is_err());
        let text = "t,m,algorithm,mean,std,samples\n50,2,closest,1.0,1.0,1\n";
        assert!(read_summary_csv(text.as_bytes()).is_err());
    }
}
