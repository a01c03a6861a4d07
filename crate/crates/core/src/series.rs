//! Monthly series container and the elementwise transforms built on it.

use crate::error::{Error, Result};
use crate::month::MonthStamp;
use crate::num::Real;
use crate::stats;

/// An ordered monthly series. Months are strictly increasing and all values
/// finite; missing months are simply absent.
#[derive(Debug, Clone, PartialEq)]
pub struct Series<T = f64> {
    id: String,
    units: String,
    points: Vec<(MonthStamp, T)>,
}

impl<T: Real> Series<T> {
    /// Builds a series from points, sorting by month. Duplicate months and
    /// non-finite values are rejected.
    pub fn new(
        id: impl Into<String>,
        units: impl Into<String>,
        mut points: Vec<(MonthStamp, T)>,
    ) -> Result<Self> {
        let id = id.into();
        points.sort_by_key(|(m, _)| *m);
        for w in points.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::DuplicateMonth { id, month: w[0].0 });
            }
        }
        if let Some(&(month, v)) = points.iter().find(|(_, v)| !v.is_finite()) {
            let _ = v;
            return Err(Error::NotFinite { id, month });
        }
        Ok(Self {
            id,
            units: units.into(),
            points,
        })
    }

    /// Convenience constructor: consecutive months starting at `start`.
    pub fn from_values(
        id: impl Into<String>,
        units: impl Into<String>,
        start: MonthStamp,
        values: &[T],
    ) -> Result<Self> {
        let points = values
            .iter()
            .enumerate()
            .map(|(i, &v)| (start.add_months(i as u32), v))
            .collect();
        Self::new(id, units, points)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn units(&self) -> &str {
        &self.units
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[(MonthStamp, T)] {
        &self.points
    }

    pub fn months(&self) -> impl Iterator<Item = MonthStamp> + '_ {
        self.points.iter().map(|(m, _)| *m)
    }

    pub fn values(&self) -> Vec<T> {
        self.points.iter().map(|(_, v)| *v).collect()
    }

    pub fn first_month(&self) -> Option<MonthStamp> {
        self.points.first().map(|(m, _)| *m)
    }

    pub fn last_month(&self) -> Option<MonthStamp> {
        self.points.last().map(|(m, _)| *m)
    }

    pub fn value_at(&self, month: MonthStamp) -> Option<T> {
        self.points
            .binary_search_by_key(&month, |(m, _)| *m)
            .ok()
            .map(|i| self.points[i].1)
    }

    /// Same points under a new id.
    pub fn renamed(&self, id: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            units: self.units.clone(),
            points: self.points.clone(),
        }
    }

    /// Restricts to months in `[start, end]` inclusive.
    pub fn clip(&self, start: MonthStamp, end: MonthStamp) -> Self {
        Self {
            id: self.id.clone(),
            units: self.units.clone(),
            points: self
                .points
                .iter()
                .filter(|(m, _)| *m >= start && *m <= end)
                .cloned()
                .collect(),
        }
    }

    /// True when every pair of neighbouring points is one month apart.
    pub fn is_contiguous(&self) -> bool {
        self.points.windows(2).all(|w| w[1].0.follows(&w[0].0))
    }

    /// First month that breaks contiguity, if any.
    pub fn first_gap(&self) -> Option<MonthStamp> {
        self.points
            .windows(2)
            .find(|w| !w[1].0.follows(&w[0].0))
            .map(|w| w[1].0)
    }
}

/// Month-over-month log difference: ln(v_t) − ln(v_{t−1}) for consecutive
/// months only. A gap between points produces no output across it.
pub fn log_diff<T: Real>(s: &Series<T>) -> Result<Series<T>> {
    if s.len() < 2 {
        return Err(Error::TooShort {
            id: s.id.clone(),
            needed: 2,
            actual: s.len(),
        });
    }
    if let Some(&(month, value)) = s.points.iter().find(|(_, v)| *v <= T::zero()) {
        return Err(Error::NonPositiveValue {
            id: s.id.clone(),
            month,
            value: value.to_f64().unwrap_or(f64::NAN),
        });
    }
    let points = s
        .points
        .windows(2)
        .filter(|w| w[1].0.follows(&w[0].0))
        .map(|w| (w[1].0, w[1].1.ln() - w[0].1.ln()))
        .collect();
    Series::new(format!("dlog({})", s.id), "log change", points)
}

/// Re-stamps each point `k` months later. Lagging by 1 turns the January
/// value into February's regressor value.
pub fn lag<T: Real>(s: &Series<T>, k: u32) -> Result<Series<T>> {
    if k == 0 {
        return Err(Error::ZeroLag);
    }
    let points = s
        .points
        .iter()
        .map(|(m, v)| (m.add_months(k), *v))
        .collect();
    Series::new(format!("lag{}({})", k, s.id), s.units.clone(), points)
}

/// Centers and scales to sample standard deviation one (divisor n−1).
pub fn standardize<T: Real>(s: &Series<T>) -> Result<Series<T>> {
    if s.len() < 2 {
        return Err(Error::TooShort {
            id: s.id.clone(),
            needed: 2,
            actual: s.len(),
        });
    }
    let values = s.values();
    let m = stats::mean(&values);
    let sd = stats::sample_std(&values);
    if sd <= T::zero() {
        return Err(Error::ZeroVariance { name: s.id.clone() });
    }
    let points = s
        .points
        .iter()
        .map(|(month, v)| (*month, (*v - m) / sd))
        .collect();
    Series::new(s.id.clone(), "standardized", points)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(y: i32, mo: u8) -> MonthStamp {
        MonthStamp::new(y, mo).unwrap()
    }

    fn s(values: &[f64]) -> Series {
        Series::from_values("x", "level", m(2011, 1), values).unwrap()
    }

    #[test]
    fn rejects_duplicate_months_and_nan() {
        let dup = Series::new("x", "", vec![(m(2011, 1), 1.0), (m(2011, 1), 2.0)]);
        assert!(matches!(dup, Err(Error::DuplicateMonth { .. })));
        let nan = Series::new("x", "", vec![(m(2011, 1), f64::NAN)]);
        assert!(matches!(nan, Err(Error::NotFinite { .. })));
    }

    #[test]
    fn sorts_unordered_input() {
        let sr = Series::new("x", "", vec![(m(2011, 3), 3.0), (m(2011, 1), 1.0)]).unwrap();
        assert_eq!(sr.months().collect::<Vec<_>>(), vec![m(2011, 1), m(2011, 3)]);
    }

    #[test]
    fn log_diff_of_constant_series_is_zero() {
        let d = log_diff(&s(&[100.0, 100.0, 100.0])).unwrap();
        assert_eq!(d.len(), 2);
        assert!(d.values().iter().all(|v| *v == 0.0));
    }

    #[test]
    fn log_diff_matches_direct_evaluation() {
        let d = log_diff(&s(&[100.0, 105.0])).unwrap();
        assert!((d.values()[0] - (1.05f64).ln()).abs() < 1e-12);
        assert!((d.values()[0] - 0.048790).abs() < 1e-6);
        assert_eq!(d.months().next().unwrap(), m(2011, 2));
    }

    #[test]
    fn log_diff_skips_gaps() {
        let sr = Series::new(
            "x",
            "",
            vec![(m(2011, 1), 100.0), (m(2011, 2), 110.0), (m(2011, 4), 120.0)],
        )
        .unwrap();
        let d = log_diff(&sr).unwrap();
        // No diff across the missing 2011-03.
        assert_eq!(d.months().collect::<Vec<_>>(), vec![m(2011, 2)]);
    }

    #[test]
    fn log_diff_rejects_non_positive_values() {
        let e = log_diff(&s(&[100.0, 0.0])).unwrap_err();
        assert!(matches!(e, Error::NonPositiveValue { .. }));
        let e = log_diff(&s(&[42.0])).unwrap_err();
        assert!(matches!(e, Error::TooShort { .. }));
    }

    #[test]
    fn lag_restamps_and_rejects_zero() {
        let sr = Series::new("x", "", vec![(m(2011, 1), 1.0), (m(2011, 2), 2.0)]).unwrap();
        assert!(matches!(lag(&sr, 0), Err(Error::ZeroLag)));
        let lagged = lag(&sr, 1).unwrap();
        assert_eq!(lagged.months().collect::<Vec<_>>(), vec![m(2011, 2), m(2011, 3)]);
        assert_eq!(lagged.values(), vec![1.0, 2.0]);
    }

    #[test]
    fn lag_composes() {
        let sr = s(&[1.0, 2.0, 3.0]);
        let twice = lag(&lag(&sr, 1).unwrap(), 1).unwrap();
        let once2 = lag(&sr, 2).unwrap();
        assert_eq!(twice.points(), once2.points());
    }

    #[test]
    fn lag_rolls_over_december() {
        let sr = Series::new("x", "", vec![(m(2019, 12), 9.0)]).unwrap();
        let lagged = lag(&sr, 1).unwrap();
        assert_eq!(lagged.months().next().unwrap(), m(2020, 1));
    }

    #[test]
    fn standardize_hits_hand_values() {
        let z = standardize(&s(&[1.0, 2.0, 3.0])).unwrap();
        assert_eq!(z.values(), vec![-1.0, 0.0, 1.0]);
    }

    #[test]
    fn standardize_is_idempotent_and_centered() {
        let z = standardize(&s(&[3.1, -0.4, 9.9, 2.2, 5.0])).unwrap();
        let vals = z.values();
        let mean: f64 = vals.iter().sum::<f64>() / vals.len() as f64;
        assert!(mean.abs() < 1e-12);
        assert!((crate::stats::sample_std(&vals) - 1.0).abs() < 1e-12);
        let zz = standardize(&z).unwrap();
        for (a, b) in zz.values().iter().zip(vals.iter()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn standardize_rejects_constant_series() {
        assert!(matches!(
            standardize(&s(&[5.0, 5.0, 5.0])),
            Err(Error::ZeroVariance { .. })
        ));
    }
}
