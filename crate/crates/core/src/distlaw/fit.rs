//! Statistics over experiment summaries and the route-total law.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{
    LawError, MTSP_COEFFICIENT, MTSP_EXPONENT, SALESMAN_INCREMENT, TSP_COEFFICIENT, TSP_EXPONENT,
};
use crate::scalar::Scalar;

/// Mean and sample standard deviation of route totals for one grid cell.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow<T = f64> {
    /// Customer count.
    pub t: usize,
    /// Salesman count.
    pub m: usize,
    pub algorithm: String,
    pub mean: T,
    pub std: T,
    pub samples: usize,
}

/// `s = coefficient * t^exponent`, fitted in log space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PowerFit<T = f64> {
    pub coefficient: T,
    pub exponent: T,
    /// Residual sum of squares of `ln s`.
    pub rss: T,
}

impl<T: Scalar> PowerFit<T> {
    pub fn eval(&self, t: T) -> T {
        self.coefficient * t.powf(self.exponent)
    }
}

/// Mean and sample standard deviation of consecutive-`m` differences.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeltaEstimate<T = f64> {
    pub delta: T,
    pub std: T,
    pub differences: usize,
}

/// Route total for `m >= 2` salesmen: `coefficient t^exponent + delta (m - 2)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DistanceLaw<T = f64> {
    pub coefficient: T,
    pub exponent: T,
    pub delta: T,
}

impl<T: Scalar> DistanceLaw<T> {
    /// The published constants.
    pub fn published() -> Self {
        Self {
            coefficient: T::lit(MTSP_COEFFICIENT),
            exponent: T::lit(MTSP_EXPONENT),
            delta: T::lit(SALESMAN_INCREMENT),
        }
    }

    pub fn from_fit(fit: &PowerFit<T>, delta: T) -> Self {
        Self { coefficient: fit.coefficient, exponent: fit.exponent, delta }
    }

    /// Requires `m >= 2`.
    pub fn predict(&self, t: usize, m: usize) -> Result<T, LawError> {
        if t < 1 {
            return Err(LawError::TooSmall { what: "customer count", min: 1, value: t as u64 });
        }
        extrapolate_m(self.coefficient * T::of_usize(t).powf(self.exponent), m, self.delta)
    }
}

fn sample_std<T: Scalar>(values: &[T], mean: T) -> T {
    if values.len() < 2 {
        return T::zero();
    }
    let ss: T = values.iter().map(|&v| (v - mean) * (v - mean)).sum();
    (ss / T::of_usize(values.len() - 1)).sqrt()
}

/// Average growth of the mean route total per added salesman.
///
/// `rows` must hold one algorithm and cover `S x {2..=max m}` exactly once.
pub fn delta_estimate<T: Scalar>(rows: &[SummaryRow<T>]) -> Result<DeltaEstimate<T>, LawError> {
    let Some(first) = rows.first() else {
        return Err(LawError::TooFewPoints { needed: 2, found: 0 });
    };
    let mut cells: BTreeMap<usize, BTreeMap<usize, T>> = BTreeMap::new();
    let mut max_m = 0;
    for row in rows {
        if row.algorithm != first.algorithm {
            return Err(LawError::MixedAlgorithms(first.algorithm.clone(), row.algorithm.clone()));
        }
        if row.m < 2 {
            return Err(LawError::TooSmall { what: "salesman count", min: 2, value: row.m as u64 });
        }
        if cells.entry(row.t).or_default().insert(row.m, row.mean).is_some() {
            return Err(LawError::DuplicateCell { t: row.t, m: row.m });
        }
        max_m = max_m.max(row.m);
    }
    if max_m < 3 {
        return Err(LawError::MissingCell { t: first.t, m: 3 });
    }
    let mut diffs = Vec::new();
    for (&t, by_m) in &cells {
        let mean_at = |m| by_m.get(&m).copied().ok_or(LawError::MissingCell { t, m });
        for m in 3..=max_m {
            diffs.push(mean_at(m)? - mean_at(m - 1)?);
        }
    }
    let delta = diffs.iter().copied().sum::<T>() / T::of_usize(diffs.len());
    Ok(DeltaEstimate { delta, std: sample_std(&diffs, delta), differences: diffs.len() })
}

/// `s_t2 + (m - 2) delta`.
pub fn extrapolate_m<T: Scalar>(s_t2: T, m: usize, delta: T) -> Result<T, LawError> {
    if m < 2 {
        return Err(LawError::TooSmall { what: "salesman count", min: 2, value: m as u64 });
    }
    Ok(s_t2 + T::of_usize(m - 2) * delta)
}

/// Ordinary least squares of `ln s` on `ln t`.
pub fn fit_power_law<T: Scalar>(points: &[(T, T)]) -> Result<PowerFit<T>, LawError> {
    if points.len() < 2 {
        return Err(LawError::TooFewPoints { needed: 2, found: points.len() });
    }
    for &(t, s) in points {
        if !(t > T::zero()) {
            return Err(LawError::NonPositive { what: "abscissa", value: t.as_f64() });
        }
        if !(s > T::zero()) {
            return Err(LawError::NonPositive { what: "ordinate", value: s.as_f64() });
        }
    }
    let k = T::of_usize(points.len());
    let xs: Vec<T> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<T> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().copied().sum::<T>() / k;
    let my = ys.iter().copied().sum::<T>() / k;
    let sxx: T = xs.iter().map(|&x| (x - mx) * (x - mx)).sum();
    if sxx <= T::zero() {
        return Err(LawError::DegenerateAbscissa);
    }
    let sxy: T = xs.iter().zip(&ys).map(|(&x, &y)| (x - mx) * (y - my)).sum();
    let exponent = sxy / sxx;
    let intercept = my - exponent * mx;
    let rss = xs
        .iter()
        .zip(&ys)
        .map(|(&x, &y)| {
            let r = y - intercept - exponent * x;
            r * r
        })
        .sum();
    Ok(PowerFit { coefficient: intercept.exp(), exponent, rss })
}

/// Published prediction of the mean route total for `t` customers and `m`
/// salesmen on a grid `scale` times the calibration grid.
pub fn predict_mtsp_distance<T: Scalar>(t: usize, m: usize, scale: T) -> Result<T, LawError> {
    if t < 1 {
        return Err(LawError::TooSmall { what: "customer count", min: 1, value: t as u64 });
    }
    if m < 1 {
        return Err(LawError::TooSmall { what: "salesman count", min: 1, value: 0 });
    }
    if !(scale > T::zero()) {
        return Err(LawError::NonPositive { what: "scale", value: scale.as_f64() });
    }
    let base = if m == 1 {
        T::lit(TSP_COEFFICIENT) * T::of_usize(t).powf(T::lit(TSP_EXPONENT))
    } else {
        DistanceLaw::published().predict(t, m)?
    };
    Ok(scale * base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn row(t: usize, m: usize, mean: f64) -> SummaryRow {
        SummaryRow { t, m, algorithm: "closest".into(), mean, std: 1.0, samples: 30 }
    }

    #[test]
    fn extrapolation() {
        assert_eq!(extrapolate_m(1578.0, 2, 90.4).unwrap(), 1578.0);
        assert!((extrapolate_m(1568.9f64, 6, 90.4).unwrap() - 1930.5).abs() < 0.05);
        assert_relative_eq!(extrapolate_m(0.0, 4, 90.4).unwrap(), 180.8);
        assert!(extrapolate_m(1.0, 1, 90.4).is_err());
    }

    #[test]
    fn predictions() {
        assert!((predict_mtsp_distance(250, 6, 1.0f64).unwrap() - 1930.5).abs() < 0.1);
        assert!((predict_mtsp_distance(250, 2, 1.0f64).unwrap() - 1568.9).abs() < 0.1);
        let scaled = predict_mtsp_distance(250, 6, 299.0 / 99.0).unwrap();
        assert_relative_eq!(scaled, predict_mtsp_distance(250, 6, 1.0).unwrap() * 299.0 / 99.0, max_relative = 1e-12);
        assert_relative_eq!(predict_mtsp_distance(100, 1, 1.0).unwrap(), 111.37 * 100f64.powf(0.4704));
        assert!(predict_mtsp_distance(0, 2, 1.0).is_err());
        assert!(predict_mtsp_distance(10, 0, 1.0).is_err());
        assert!(predict_mtsp_distance(10, 2, 0.0).is_err());
    }

    #[test]
    fn fit_recovers_generator() {
        let pts: Vec<(f64, f64)> = (1..=10).map(|i| {
            let t = 50.0 * f64::from(i);
            (t, 138.2 * t.powf(0.44))
        }).collect();
        let fit = fit_power_law(&pts).unwrap();
        assert!((fit.coefficient - 138.2).abs() < 1e-6);
        assert!((fit.exponent - 0.44).abs() < 1e-6);
        assert!(fit.rss < 1e-20);
    }

    #[test]
    fn fit_two_points_interpolates() {
        let fit = fit_power_law(&[(2.0, 3.0), (8.0, 12.0)]).unwrap();
        assert_relative_eq!(fit.exponent, 1.0, max_relative = 1e-12);
        assert_relative_eq!(fit.coefficient, 1.5, max_relative = 1e-12);
        assert!(fit.rss < 1e-24);
    }

    #[test]
    fn fit_errors() {
        assert_eq!(fit_power_law(&[(1.0, 1.0)]), Err(LawError::TooFewPoints { needed: 2, found: 1 }));
        assert!(matches!(fit_power_law(&[(1.0, 1.0), (2.0, 0.0)]), Err(LawError::NonPositive { .. })));
        assert!(matches!(fit_power_law(&[(-1.0, 1.0), (2.0, 1.0)]), Err(LawError::NonPositive { .. })));
        assert_eq!(fit_power_law(&[(3.0, 1.0), (3.0, 2.0)]), Err(LawError::DegenerateAbscissa));
    }

    #[test]
    fn delta_on_linear_table() {
        let rows: Vec<SummaryRow> = [50, 100, 150]
            .iter()
            .flat_map(|&t| (2..=7).map(move |m| row(t, m, 10.0 * t as f64 + 90.4 * (m as f64 - 2.0))))
            .collect();
        let d = delta_estimate(&rows).unwrap();
        assert!((d.delta - 90.4).abs() < 1e-9);
        assert!(d.std < 1e-9);
        assert_eq!(d.differences, 15);
    }

    #[test]
    fn delta_errors() {
        let mut rows = vec![row(50, 2, 1.0), row(50, 3, 2.0), row(100, 2, 3.0)];
        assert_eq!(delta_estimate(&rows), Err(LawError::MissingCell { t: 100, m: 3 }));
        rows.push(row(100, 3, 4.0));
        assert!(delta_estimate(&rows).is_ok());
        rows.push(row(100, 3, 4.0));
        assert_eq!(delta_estimate(&rows), Err(LawError::DuplicateCell { t: 100, m: 3 }));
        let mut mixed = vec![row(50, 2, 1.0), row(50, 3, 2.0)];
        mixed[1].algorithm = "nearest".into();
        assert!(matches!(delta_estimate(&mixed), Err(LawError::MixedAlgorithms(..))));
        assert!(delta_estimate::<f64>(&[]).is_err());
        assert!(delta_estimate(&[row(50, 2, 1.0)]).is_err());
    }

    #[test]
    fn published_law_matches_prediction() {
        let law = DistanceLaw::<f64>::published();
        assert_eq!(law.predict(250, 6).unwrap(), predict_mtsp_distance(250, 6, 1.0).unwrap());
    }

    proptest! {
        #[test]
        fn prediction_increases(t in 1usize..5000, m in 2usize..50) {
            let here = predict_mtsp_distance(t, m, 1.0).unwrap();
            prop_assert!(predict_mtsp_distance(t + 1, m, 1.0).unwrap() > here);
            prop_assert!(predict_mtsp_distance(t, m + 1, 1.0).unwrap() > here);
        }

        #[test]
        fn fit_recovers_any_power_law(c in 0.1f64..1000.0, p in -2.0f64..2.0, n in 2usize..20) {
            let pts: Vec<(f64, f64)> = (1..=n).map(|i| {
                let t = 7.0 * i as f64;
                (t, c * t.powf(p))
            }).collect();
            let fit = fit_power_law(&pts).unwrap();
            prop_assert!((fit.coefficient - c).abs() <= 1e-6 * c.max(1.0));
            prop_assert!((fit.exponent - p).abs() <= 1e-6);
        }

        #[test]
        fn linear_tables_have_zero_spread(c in -50.0f64..200.0, base in 100.0f64..2000.0, max_m in 3usize..9) {
            let rows: Vec<SummaryRow> = [50usize, 100]
                .iter()
                .flat_map(|&t| (2..=max_m).map(move |m| row(t, m, base + t as f64 + c * (m as f64 - 2.0))))
                .collect();
            let d = delta_estimate(&rows).unwrap();
            prop_assert!((d.delta - c).abs() <= 1e-9 * c.abs().max(1.0) * 100.0);
            prop_assert!(d.std <= 1e-9 * 100.0 * c.abs().max(1.0));
        }
    }
}
