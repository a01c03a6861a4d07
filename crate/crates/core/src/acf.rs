//! Sample autocorrelation function with the plotting confidence band.

use crate::error::{Error, Result};
use crate::num::Real;
use crate::series::Series;
use crate::stats;

/// Autocorrelations r_1..r_max_lag plus the ±1.96/√n band used on ACF bar
/// plots. r_0 is 1 by definition and not stored.
#[derive(Debug, Clone, PartialEq)]
pub struct Acf<T = f64> {
    pub values: Vec<T>,
    pub band: T,
}

impl<T: Real> Acf<T> {
    /// Value at `lag`, with `lag = 0` returning 1.
    pub fn at(&self, lag: usize) -> Option<T> {
        if lag == 0 {
            Some(T::one())
        } else {
            self.values.get(lag - 1).copied()
        }
    }
}

/// r_k = Σ_{t=k+1..n}(x_t−x̄)(x_{t−k}−x̄) / Σ(x_t−x̄)², the biased estimator
/// used by standard ACF bar plots.
pub fn acf<T: Real>(s: &Series<T>, max_lag: usize) -> Result<Acf<T>> {
    let x = s.values();
    let n = x.len();
    if max_lag < 1 || n <= max_lag {
        return Err(Error::TooShort {
            id: s.id().to_string(),
            needed: max_lag + 1,
            actual: n,
        });
    }
    let m = stats::mean(&x);
    let denom = x.iter().map(|&v| (v - m) * (v - m)).sum::<T>();
    if denom <= T::zero() {
        return Err(Error::ZeroVariance { name: s.id().to_string() });
    }
    let values = (1..=max_lag)
        .map(|k| {
            let num = (k..n).map(|t| (x[t] - m) * (x[t - k] - m)).sum::<T>();
            num / denom
        })
        .collect();
    Ok(Acf {
        values,
        band: T::of(1.96) / T::of_usize(n).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::month::MonthStamp;

    fn s(values: &[f64]) -> Series {
        Series::from_values("x", "", MonthStamp::new(2011, 1).unwrap(), values).unwrap()
    }

    #[test]
    fn lag_zero_is_one() {
        let a = acf(&s(&[1.0, 5.0, 2.0, 4.0, 3.0]), 2).unwrap();
        assert_eq!(a.at(0), Some(1.0));
    }

    #[test]
    fn hand_computed_lag_one() {
        // Deviations (−2,−1,0,1,2): numerator 4, denominator 10.
        let a = acf(&s(&[1.0, 2.0, 3.0, 4.0, 5.0]), 1).unwrap();
        assert!((a.values[0] - 0.4).abs() < 1e-15);
        assert!((a.band - 1.96 / 5.0f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn mean_shift_leaves_acf_unchanged() {
        let base = [1.0, 4.0, 2.0, 8.0, 5.0, 7.0];
        let shifted: Vec<f64> = base.iter().map(|v| v + 100.0).collect();
        let a = acf(&s(&base), 3).unwrap();
        let b = acf(&s(&shifted), 3).unwrap();
        for (x, y) in a.values.iter().zip(&b.values) {
            assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn rejects_short_and_constant_input() {
        assert!(matches!(
            acf(&s(&[1.0, 2.0]), 2),
            Err(Error::TooShort { .. })
        ));
        assert!(matches!(
            acf(&s(&[3.0, 3.0, 3.0]), 1),
            Err(Error::ZeroVariance { .. })
        ));
    }
}
