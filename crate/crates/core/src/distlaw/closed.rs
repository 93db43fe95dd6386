//! Closed-form expectations and grid tour lengths.

use super::{LawError, MIN_DIST_COEFFICIENT, MIN_DIST_EXPONENT, REFERENCE_GRID_SIDE};
use crate::scalar::Scalar;

fn non_negative<T: Scalar>(what: &'static str, v: T) -> Result<(), LawError> {
    if v >= T::zero() {
        Ok(())
    } else {
        Err(LawError::NonPositive { what, value: v.as_f64() })
    }
}

fn positive<T: Scalar>(what: &'static str, v: T) -> Result<(), LawError> {
    if v > T::zero() {
        Ok(())
    } else {
        Err(LawError::NonPositive { what, value: v.as_f64() })
    }
}

/// Mean distance between two uniform points on an interval of length `d`.
pub fn expected_pair_distance_interval<T: Scalar>(d: T) -> Result<T, LawError> {
    non_negative("diameter", d)?;
    Ok(d / T::lit(3.0))
}

/// Mean distance between two uniform points in an `a x b` rectangle.
pub fn expected_pair_distance_rectangle<T: Scalar>(a: T, b: T) -> Result<T, LawError> {
    positive("side a", a)?;
    positive("side b", b)?;
    let d = a.hypot(b);
    let (a2, b2) = (a * a, b * b);
    let polynomial = a2 * a / b2 + b2 * b / a2 + d * (T::lit(3.0) - a2 / b2 - b2 / a2);
    let logs = b2 / a * ((a + d) / b).ln() + a2 / b * ((b + d) / a).ln();
    Ok((polynomial + T::lit(2.5) * logs) / T::lit(15.0))
}

/// `(2 + sqrt 2 + 5 ln(sqrt 2 + 1)) / (15 sqrt 2)`, about 0.36869.
pub fn square_coefficient<T: Scalar>() -> T {
    let r2 = T::SQRT_2();
    (T::lit(2.0) + r2 + T::lit(5.0) * (r2 + T::one()).ln()) / (T::lit(15.0) * r2)
}

/// Mean distance between two uniform points in a square of diagonal `d`.
pub fn expected_pair_distance_square<T: Scalar>(d: T) -> Result<T, LawError> {
    non_negative("diameter", d)?;
    Ok(square_coefficient::<T>() * d)
}

fn ln_factorial(k: u32) -> f64 {
    (2..=k).map(|i| f64::from(i).ln()).sum()
}

/// `beta_s`, by parity of the dimension.
fn ball_beta(s: u32) -> f64 {
    let sf = f64::from(s);
    let ln2 = std::f64::consts::LN_2;
    let ln = if s.is_multiple_of(2) {
        (3.0 * sf + 1.0) * ln2 + 2.0 * ln_factorial(s / 2) + ln_factorial(s)
            - (sf + 1.0).ln()
            - ln_factorial(2 * s)
            - std::f64::consts::PI.ln()
    } else {
        (sf + 1.0) * ln2 + 3.0 * ln_factorial(s) - (sf + 1.0).ln() - 2.0 * ln_factorial((s - 1) / 2) - ln_factorial(2 * s)
    };
    ln.exp()
}

/// Ratio of the mean pair distance to the diameter in an `s`-ball.
pub fn ball_coefficient<T: Scalar>(s: u32) -> Result<T, LawError> {
    if s < 1 {
        return Err(LawError::TooSmall { what: "dimension", min: 1, value: 0 });
    }
    let sf = f64::from(s);
    Ok(T::lit(sf / (2.0 * sf + 1.0) * ball_beta(s)))
}

/// Mean distance between two uniform points in an `s`-ball of diameter `d`.
pub fn expected_pair_distance_ball<T: Scalar>(s: u32, d: T) -> Result<T, LawError> {
    non_negative("diameter", d)?;
    Ok(ball_coefficient::<T>(s)? * d)
}

/// Empirical mean gap from a uniform point to the nearest of `n` uniform points in `[0, 1]`.
pub fn min_dist_expectation<T: Scalar>(n: usize) -> Result<T, LawError> {
    if n <= 1 {
        return Err(LawError::TooSmall { what: "point count", min: 2, value: n as u64 });
    }
    Ok(T::lit(MIN_DIST_COEFFICIENT) * T::of_usize(n).powf(T::lit(MIN_DIST_EXPONENT)))
}

fn gap(a: i64, b: i64) -> Result<i64, LawError> {
    if b > a {
        Ok(b - a)
    } else {
        Err(LawError::EmptyRange { a, b })
    }
}

/// Greedy single-salesman tour over every integer point of `[a, b]`, depot inside.
pub fn grid_line_distance<T: Scalar>(a: i64, b: i64) -> Result<T, LawError> {
    let g = gap(a, b)?;
    Ok(T::lit((2 * g + 1) as f64))
}

/// Greedy serpentine tour over every point of the `[a, b]^2` grid from a corner depot.
pub fn grid_tsp_distance<T: Scalar>(a: i64, b: i64) -> Result<T, LawError> {
    let g = gap(a, b)? as f64;
    Ok(T::lit(g * (g + 1.0) + 2.0 * g))
}

/// [`grid_tsp_distance`] in its expanded form `g^2 + 3g`.
pub fn grid_tsp_distance_expanded<T: Scalar>(a: i64, b: i64) -> Result<T, LawError> {
    let g = gap(a, b)? as f64;
    Ok(T::lit(g * g + 3.0 * g))
}

fn even_gap(a: i64, b: i64) -> Result<i64, LawError> {
    let g = gap(a, b)?;
    if g % 2 == 0 {
        Ok(g)
    } else {
        Err(LawError::OddGap { a, b })
    }
}

/// Two balanced salesmen sweeping the `[a, b]^2` grid from opposite corner depots.
/// Requires an even gap `b - a`.
pub fn grid_2tsp_corner_distance<T: Scalar>(a: i64, b: i64) -> Result<T, LawError> {
    let g = T::lit(even_gap(a, b)? as f64);
    let one = T::one();
    let diagonal = (g * g + T::lit(0.25) * (g - one) * (g - one)).sqrt();
    Ok(g * (g + one) + g - one + T::lit(2.0) * diagonal)
}

/// [`grid_2tsp_corner_distance`] written in the endpoints directly.
pub fn grid_2tsp_corner_distance_expanded<T: Scalar>(a: i64, b: i64) -> Result<T, LawError> {
    let g = T::lit(even_gap(a, b)? as f64);
    let (a, b) = (T::lit(a as f64), T::lit(b as f64));
    let five = T::lit(5.0);
    let two = T::lit(2.0);
    let root = (five * a * a - T::lit(10.0) * a * b + two * a + five * b * b - two * b + T::one()).sqrt();
    Ok(g * g + two * g - T::one() + root)
}

/// Length multiplier for a square of side `side` relative to the calibration grid.
pub fn grid_scale<T: Scalar>(side: usize) -> Result<T, LawError> {
    if side < 2 {
        return Err(LawError::TooSmall { what: "grid side", min: 2, value: side as u64 });
    }
    Ok(T::of_usize(side - 1) / T::of_usize(REFERENCE_GRID_SIDE - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn interval() {
        assert_relative_eq!(expected_pair_distance_interval(100.0).unwrap(), 100.0 / 3.0);
        assert_eq!(expected_pair_distance_interval(0.0).unwrap(), 0.0);
        assert!(expected_pair_distance_interval(-1.0).is_err());
    }

    #[test]
    fn square_example() {
        assert!((square_coefficient::<f64>() - 0.36869).abs() < 1e-5);
        let v = expected_pair_distance_square(2f64.sqrt() * 100.0).unwrap();
        assert!((v - 52.14).abs() < 0.01, "{v}");
        assert_eq!(expected_pair_distance_square(0.0).unwrap(), 0.0);
        let r: f64 = expected_pair_distance_rectangle(100.0, 100.0).unwrap();
        assert!((r - 52.14).abs() < 0.01, "{r}");
    }

    #[test]
    fn rectangle_rejects_degenerate_sides() {
        assert!(expected_pair_distance_rectangle(0.0, 1.0).is_err());
        assert!(expected_pair_distance_rectangle(1.0, -2.0).is_err());
    }

    #[test]
    fn ball_values() {
        let two = expected_pair_distance_ball(2, 1.0).unwrap();
        assert_relative_eq!(two, 64.0 / (45.0 * std::f64::consts::PI), max_relative = 1e-12);
        assert!((two - 0.45271).abs() < 1e-5);
        assert_relative_eq!(expected_pair_distance_ball(1, 1.0).unwrap(), 1.0 / 3.0, max_relative = 1e-12);
        assert_relative_eq!(expected_pair_distance_ball(3, 2.0).unwrap(), 36.0 / 35.0, max_relative = 1e-12);
        assert!(expected_pair_distance_ball::<f64>(0, 1.0).is_err());
        // Coefficient tends to 1/sqrt 2 times the diameter ratio as dimension grows.
        let high = ball_coefficient::<f64>(200).unwrap();
        assert!(high.is_finite() && high > 0.6 && high < 0.71, "{high}");
    }

    #[test]
    fn min_dist_values() {
        let v: f64 = min_dist_expectation(50).unwrap();
        assert!((v - 0.01015).abs() < 1e-4, "{v}");
        let two: f64 = min_dist_expectation(2).unwrap();
        assert!((two - 0.2154).abs() < 1e-4, "{two}");
        assert!(min_dist_expectation::<f64>(1).is_err());
        let mut prev: f64 = min_dist_expectation(2).unwrap();
        for n in 3..10_000 {
            let v: f64 = min_dist_expectation(n).unwrap();
            assert!(v < prev);
            prev = v;
        }
    }

    #[test]
    fn grid_values() {
        assert_eq!(grid_line_distance::<f64>(0, 100).unwrap(), 201.0);
        assert_eq!(grid_line_distance::<f64>(1, 100).unwrap(), 199.0);
        assert_eq!(grid_line_distance::<f64>(7, 8).unwrap(), 3.0);
        assert!(grid_line_distance::<f64>(3, 3).is_err());
        assert_eq!(grid_tsp_distance::<f64>(1, 100).unwrap(), 10098.0);
        assert_eq!(grid_tsp_distance::<f64>(-4, -3).unwrap(), 4.0);
        assert!(grid_tsp_distance::<f64>(5, 1).is_err());
    }

    #[test]
    fn two_salesmen_corner() {
        let small: f64 = grid_2tsp_corner_distance(0, 2).unwrap();
        assert!((small - 11.123).abs() < 1e-3, "{small}");
        let v: f64 = grid_2tsp_corner_distance(1, 99).unwrap();
        let direct = 98.0 * 99.0 + 97.0 + 2.0 * (98.0f64 * 98.0 + 0.25 * 97.0 * 97.0).sqrt();
        assert_relative_eq!(v, direct, max_relative = 1e-12);
        assert!((v - 10017.69).abs() < 0.01, "{v}");
        assert_eq!(grid_2tsp_corner_distance::<f64>(1, 100), Err(LawError::OddGap { a: 1, b: 100 }));
    }

    #[test]
    fn scale() {
        assert_eq!(grid_scale::<f64>(100).unwrap(), 1.0);
        assert_relative_eq!(grid_scale::<f64>(300).unwrap(), 299.0 / 99.0);
        assert!(grid_scale::<f64>(1).is_err());
    }

    #[test]
    fn f32_matches_f64() {
        let a = expected_pair_distance_rectangle(3.0f32, 4.0).unwrap();
        let b = expected_pair_distance_rectangle(3.0f64, 4.0).unwrap();
        assert!((f64::from(a) - b).abs() < 1e-5);
    }

    proptest! {
        #[test]
        fn rectangle_specializes_to_square(s in 1e-3f64..1e4) {
            let r = expected_pair_distance_rectangle(s, s).unwrap();
            let q = expected_pair_distance_square(2f64.sqrt() * s).unwrap();
            prop_assert!((r - q).abs() <= 1e-9 * q.max(1.0));
        }

        #[test]
        fn rectangle_is_symmetric_and_homogeneous(a in 0.1f64..100.0, b in 0.1f64..100.0, k in 0.1f64..10.0) {
            let base = expected_pair_distance_rectangle(a, b).unwrap();
            prop_assert!((base - expected_pair_distance_rectangle(b, a).unwrap()).abs() <= 1e-9 * base);
            prop_assert!((k * base - expected_pair_distance_rectangle(k * a, k * b).unwrap()).abs() <= 1e-9 * k * base);
        }

        #[test]
        fn one_ball_is_an_interval(d in 0.0f64..1e6) {
            let ball = expected_pair_distance_ball(1, d).unwrap();
            let line = expected_pair_distance_interval(d).unwrap();
            prop_assert!((ball - line).abs() <= 1e-9 * line.max(1.0));
        }

        #[test]
        fn grid_tsp_forms_agree(a in -1000i64..1000, g in 1i64..1000) {
            prop_assert_eq!(grid_tsp_distance::<f64>(a, a + g).unwrap(), grid_tsp_distance_expanded::<f64>(a, a + g).unwrap());
        }

        #[test]
        fn corner_forms_agree(a in -1000i64..1000, half in 1i64..500) {
            let b = a + 2 * half;
            let x: f64 = grid_2tsp_corner_distance(a, b).unwrap();
            let y: f64 = grid_2tsp_corner_distance_expanded(a, b).unwrap();
            prop_assert!((x - y).abs() <= 1e-9 * x);
        }

        #[test]
        fn odd_gaps_rejected(a in -1000i64..1000, half in 0i64..500) {
            prop_assert!(grid_2tsp_corner_distance::<f64>(a, a + 2 * half + 1).is_err());
        }
    }
}
