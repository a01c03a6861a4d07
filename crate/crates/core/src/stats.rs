//! Shared scalar statistics helpers.
//!
//! Conventions used throughout the crate: sample standard deviation divides
//! by n−1; skewness and kurtosis use population (divisor n) central moments
//! with kurtosis reported raw (normal = 3); quantiles interpolate linearly
//! at position (n−1)·p between order statistics.

use crate::error::{Error, Result};
use crate::num::Real;

pub fn mean<T: Real>(xs: &[T]) -> T {
    debug_assert!(!xs.is_empty());
    xs.iter().copied().sum::<T>() / T::of_usize(xs.len())
}

/// Sample variance, divisor n−1.
pub fn sample_variance<T: Real>(xs: &[T]) -> T {
    debug_assert!(xs.len() >= 2);
    let m = mean(xs);
    let ss = xs.iter().map(|&x| (x - m) * (x - m)).sum::<T>();
    ss / T::of_usize(xs.len() - 1)
}

/// Sample standard deviation, divisor n−1.
pub fn sample_std<T: Real>(xs: &[T]) -> T {
    sample_variance(xs).sqrt()
}

/// Population central moments m2, m3, m4 (divisor n).
pub fn central_moments<T: Real>(xs: &[T]) -> (T, T, T) {
    let m = mean(xs);
    let n = T::of_usize(xs.len());
    let (mut m2, mut m3, mut m4) = (T::zero(), T::zero(), T::zero());
    for &x in xs {
        let d = x - m;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    (m2 / n, m3 / n, m4 / n)
}

/// Skewness m3/m2^{3/2} and raw kurtosis m4/m2² from population moments.
pub fn skew_kurtosis<T: Real>(xs: &[T]) -> Result<(T, T)> {
    if xs.len() < 3 {
        return Err(Error::TooShort {
            id: "moments".into(),
            needed: 3,
            actual: xs.len(),
        });
    }
    let (m2, m3, m4) = central_moments(xs);
    if m2 <= T::zero() {
        return Err(Error::ZeroVariance { name: "moments".into() });
    }
    Ok((m3 / (m2 * m2.sqrt()), m4 / (m2 * m2)))
}

/// Quantile by linear interpolation at position (n−1)·p over sorted data.
pub fn quantile_sorted<T: Real>(sorted: &[T], p: f64) -> T {
    debug_assert!(!sorted.is_empty());
    debug_assert!((0.0..=1.0).contains(&p));
    let pos = T::of(p) * T::of_usize(sorted.len() - 1);
    let lo = pos.floor();
    let idx = lo.to_usize().unwrap_or(0).min(sorted.len() - 1);
    if idx + 1 >= sorted.len() {
        return sorted[sorted.len() - 1];
    }
    let frac = pos - lo;
    sorted[idx] + frac * (sorted[idx + 1] - sorted[idx])
}

/// Pearson correlation of two equal-length slices.
pub fn pearson<T: Real>(xs: &[T], ys: &[T]) -> Result<T> {
    debug_assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    debug_assert!(n >= 2);
    let (mx, my) = (mean(xs), mean(ys));
    let (mut sxy, mut sxx, mut syy) = (T::zero(), T::zero(), T::zero());
    for i in 0..n {
        let dx = xs[i] - mx;
        let dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx <= T::zero() || syy <= T::zero() {
        return Err(Error::ZeroVariance { name: "pearson".into() });
    }
    Ok(sxy / (sxx.sqrt() * syy.sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_std_uses_n_minus_one() {
        let xs = [1.0f64, 2.0, 3.0];
        assert!((sample_std(&xs) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn quantiles_interpolate_between_order_statistics() {
        let xs = [1.0f64, 2.0, 3.0, 4.0];
        assert!((quantile_sorted(&xs, 0.25) - 1.75).abs() < 1e-15);
        assert!((quantile_sorted(&xs, 0.5) - 2.5).abs() < 1e-15);
        assert!((quantile_sorted(&xs, 0.75) - 3.25).abs() < 1e-15);
        assert_eq!(quantile_sorted(&xs, 0.0), 1.0);
        assert_eq!(quantile_sorted(&xs, 1.0), 4.0);
    }

    #[test]
    fn symmetric_data_has_zero_skew() {
        let (s, _) = skew_kurtosis(&[-1.0f64, 0.0, 1.0]).unwrap();
        assert!(s.abs() < 1e-15);
    }

    #[test]
    fn two_point_kurtosis_is_one() {
        // m2 = 1, m4 = 1 for (−1, 1); kurtosis needs ≥ 3 points so pad symmetrically.
        let (m2, _, m4) = central_moments(&[-1.0f64, 1.0]);
        assert_eq!(m4 / (m2 * m2), 1.0);
    }

    #[test]
    fn pearson_of_negated_series_is_minus_one() {
        let xs = [1.0f64, 2.0, 4.0, 8.0];
        let ys: Vec<f64> = xs.iter().map(|v| -v).collect();
        assert!((pearson(&xs, &ys).unwrap() + 1.0).abs() < 1e-12);
    }
}
