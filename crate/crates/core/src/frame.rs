//! Month-aligned collection of named columns, plus the descriptive
//! statistics and correlation matrix computed over it.

use crate::error::{Error, Result};
use crate::month::MonthStamp;
use crate::num::Real;
use crate::series::Series;
use crate::stats;

/// Named columns over a shared month index. Every column has exactly one
/// value per index entry.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame<T = f64> {
    index: Vec<MonthStamp>,
    columns: Vec<(String, Vec<T>)>,
}

/// Per-column descriptive statistics: count, mean, sample std (n−1), min,
/// quartiles by linear interpolation, max.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryStats<T = f64> {
    pub count: usize,
    pub mean: T,
    pub std: T,
    pub min: T,
    pub q25: T,
    pub q50: T,
    pub q75: T,
    pub max: T,
}

/// Labelled symmetric correlation matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix<T = f64> {
    pub names: Vec<String>,
    /// Row-major, `names.len()` × `names.len()`.
    pub values: Vec<Vec<T>>,
}

impl<T: Real> Frame<T> {
    pub fn new(index: Vec<MonthStamp>, columns: Vec<(String, Vec<T>)>) -> Result<Self> {
        for (name, values) in &columns {
            if values.len() != index.len() {
                return Err(Error::TooShort {
                    id: name.clone(),
                    needed: index.len(),
                    actual: values.len(),
                });
            }
            if columns.iter().filter(|(n, _)| n == name).count() > 1 {
                return Err(Error::DuplicateColumn { name: name.clone() });
            }
        }
        Ok(Self { index, columns })
    }

    pub fn index(&self) -> &[MonthStamp] {
        &self.index
    }

    pub fn nrows(&self) -> usize {
        self.index.len()
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn names(&self) -> Vec<&str> {
        self.columns.iter().map(|(n, _)| n.as_str()).collect()
    }

    pub fn columns(&self) -> impl Iterator<Item = (&str, &[T])> {
        self.columns.iter().map(|(n, v)| (n.as_str(), v.as_slice()))
    }

    pub fn column(&self, name: &str) -> Option<&[T]> {
        self.columns
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.as_slice())
    }

    /// The named column as a standalone series on this frame's index.
    pub fn column_series(&self, name: &str) -> Option<Series<T>> {
        self.column(name).map(|values| {
            let points = self.index.iter().copied().zip(values.iter().copied()).collect();
            Series::new(name, "", points).expect("frame columns are valid series")
        })
    }

    /// Columns other than `name`, as a new frame on the same index.
    pub fn without(&self, name: &str) -> Frame<T> {
        Frame {
            index: self.index.clone(),
            columns: self
                .columns
                .iter()
                .filter(|(n, _)| n != name)
                .cloned()
                .collect(),
        }
    }
}

/// Intersects the series' month sets and restricts each to the common
/// months. Column order follows input order; the index is ascending.
pub fn align<T: Real>(series: &[Series<T>]) -> Result<Frame<T>> {
    if series.is_empty() {
        return Err(Error::EmptyIntersection);
    }
    let mut common: Vec<MonthStamp> = series[0].months().collect();
    for s in &series[1..] {
        common.retain(|m| s.value_at(*m).is_some());
    }
    if common.is_empty() {
        return Err(Error::EmptyIntersection);
    }
    common.sort();
    let columns = series
        .iter()
        .map(|s| {
            let values = common
                .iter()
                .map(|m| s.value_at(*m).expect("month in intersection"))
                .collect();
            (s.id().to_string(), values)
        })
        .collect();
    Frame::new(common, columns)
}

/// Descriptive statistics for every column.
pub fn describe<T: Real>(frame: &Frame<T>) -> Vec<(String, SummaryStats<T>)> {
    frame
        .columns()
        .map(|(name, values)| {
            let mut sorted = values.to_vec();
            sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
            let std = if values.len() >= 2 {
                stats::sample_std(values)
            } else {
                T::zero()
            };
            let stats = SummaryStats {
                count: values.len(),
                mean: stats::mean(values),
                std,
                min: sorted[0],
                q25: stats::quantile_sorted(&sorted, 0.25),
                q50: stats::quantile_sorted(&sorted, 0.50),
                q75: stats::quantile_sorted(&sorted, 0.75),
                max: sorted[sorted.len() - 1],
            };
            (name.to_string(), stats)
        })
        .collect()
}

/// Pearson correlation matrix of the frame's columns.
pub fn correlation_matrix<T: Real>(frame: &Frame<T>) -> Result<CorrelationMatrix<T>> {
    if frame.ncols() < 2 {
        return Err(Error::TooFewRows {
            rows: frame.ncols(),
            cols: 2,
        });
    }
    let cols: Vec<(&str, &[T])> = frame.columns().collect();
    for (name, values) in &cols {
        if stats::sample_variance(values) <= T::zero() {
            return Err(Error::ZeroVariance { name: name.to_string() });
        }
    }
    let k = cols.len();
    let mut values = vec![vec![T::zero(); k]; k];
    for i in 0..k {
        values[i][i] = T::one();
        for j in (i + 1)..k {
            let r = stats::pearson(cols[i].1, cols[j].1)?;
            values[i][j] = r;
            values[j][i] = r;
        }
    }
    Ok(CorrelationMatrix {
        names: cols.iter().map(|(n, _)| n.to_string()).collect(),
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(y: i32, mo: u8) -> MonthStamp {
        MonthStamp::new(y, mo).unwrap()
    }

    fn s(id: &str, start: MonthStamp, values: &[f64]) -> Series {
        Series::from_values(id, "", start, values).unwrap()
    }

    #[test]
    fn align_keeps_full_index_for_identical_series() {
        let a = s("a", m(2011, 1), &[1.0, 2.0, 3.0]);
        let b = s("b", m(2011, 1), &[4.0, 5.0, 6.0]);
        let f = align(&[a, b]).unwrap();
        assert_eq!(f.nrows(), 3);
        assert_eq!(f.names(), vec!["a", "b"]);
    }

    #[test]
    fn align_intersects_overlapping_indices() {
        let a = s("a", m(2011, 1), &[1.0, 2.0, 3.0]); // Jan..Mar
        let b = s("b", m(2011, 2), &[5.0, 6.0, 7.0]); // Feb..Apr
        let f = align(&[a, b]).unwrap();
        assert_eq!(f.index(), &[m(2011, 2), m(2011, 3)]);
        assert_eq!(f.column("a").unwrap(), &[2.0, 3.0]);
        assert_eq!(f.column("b").unwrap(), &[5.0, 6.0]);
    }

    #[test]
    fn align_rejects_disjoint_indices() {
        let a = s("a", m(2011, 1), &[1.0, 2.0]);
        let b = s("b", m(2012, 1), &[1.0, 2.0]);
        assert!(matches!(align(&[a, b]), Err(Error::EmptyIntersection)));
    }

    #[test]
    fn align_is_order_insensitive() {
        let a = s("a", m(2011, 1), &[1.0, 2.0, 3.0]);
        let b = s("b", m(2011, 2), &[5.0, 6.0, 7.0]);
        let f1 = align(&[a.clone(), b.clone()]).unwrap();
        let f2 = align(&[b, a]).unwrap();
        assert_eq!(f1.index(), f2.index());
        assert_eq!(f1.column("a"), f2.column("a"));
        assert_eq!(f1.column("b"), f2.column("b"));
    }

    #[test]
    fn describe_matches_hand_quartiles() {
        let f: Frame = Frame::new(
            vec![m(2011, 1), m(2011, 2), m(2011, 3), m(2011, 4)],
            vec![("x".to_string(), vec![1.0, 2.0, 3.0, 4.0])],
        )
        .unwrap();
        let (_, st) = &describe(&f)[0];
        assert_eq!(st.count, 4);
        assert!((st.q25 - 1.75).abs() < 1e-15);
        assert!((st.q50 - 2.5).abs() < 1e-15);
        assert!((st.q75 - 3.25).abs() < 1e-15);
    }

    #[test]
    fn describe_of_constant_column() {
        let f: Frame = Frame::new(
            vec![m(2011, 1), m(2011, 2)],
            vec![("c".to_string(), vec![7.0, 7.0])],
        )
        .unwrap();
        let (_, st) = &describe(&f)[0];
        assert_eq!(st.std, 0.0);
        assert_eq!(st.min, 7.0);
        assert_eq!(st.q50, 7.0);
        assert_eq!(st.max, 7.0);
    }

    #[test]
    fn correlation_has_unit_diagonal_and_antisymmetry() {
        let f: Frame = Frame::new(
            vec![m(2011, 1), m(2011, 2), m(2011, 3)],
            vec![
                ("x".to_string(), vec![1.0, 2.0, 4.0]),
                ("neg".to_string(), vec![-1.0, -2.0, -4.0]),
            ],
        )
        .unwrap();
        let c = correlation_matrix(&f).unwrap();
        assert_eq!(c.values[0][0], 1.0);
        assert_eq!(c.values[1][1], 1.0);
        assert!((c.values[0][1] + 1.0).abs() < 1e-12);
        assert_eq!(c.values[0][1], c.values[1][0]);
    }

    #[test]
    fn correlation_names_the_constant_column() {
        let f = Frame::new(
            vec![m(2011, 1), m(2011, 2)],
            vec![
                ("x".to_string(), vec![1.0, 2.0]),
                ("flat".to_string(), vec![3.0, 3.0]),
            ],
        )
        .unwrap();
        match correlation_matrix(&f) {
            Err(Error::ZeroVariance { name }) => assert_eq!(name, "flat"),
            other => panic!("expected ZeroVariance, got {:?}", other),
        }
    }
}
