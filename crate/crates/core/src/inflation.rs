//! Realized inflation and its expected/unexpected decomposition through an
//! autoregressive filter.
//!
//! The filter regresses the series on its own lags by conditional least
//! squares (an ordinary OLS problem), and the residuals become the
//! unexpected component. By default the AR model is fit to the month-over-
//! month differences of inflation, which is the far less autocorrelated
//! series; fitting the level series directly is available as a mode.

use crate::error::{Error, Result};
use crate::num::Real;
use crate::ols::{self, DesignMatrix};
use crate::series::{self, Series};

/// A fitted autoregression x_t = c + φ₁x_{t−1} + … + φ_p x_{t−p} + e_t.
#[derive(Debug, Clone)]
pub struct ArFit<T = f64> {
    pub order: usize,
    pub intercept: T,
    pub coefficients: Vec<T>,
    /// One-step in-sample predictions, stamped at the dependent months.
    pub fitted: Series<T>,
    /// e_t = x_t − fitted_t, same months.
    pub residuals: Series<T>,
    /// SSR/(n−p), the conditional innovation variance estimate.
    pub sigma2: T,
}

/// Which series the AR(p) filter is fit to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArMode {
    /// Fit the month-over-month differences ΔI_t (default).
    Differences,
    /// Fit the inflation levels directly.
    Levels,
}

/// Realized inflation, expected inflation, and the unexpected residual.
/// On every output month, `i = ei + ui` holds bitwise.
#[derive(Debug, Clone)]
pub struct InflationDecomposition<T = f64> {
    pub i: Series<T>,
    pub ei: Series<T>,
    pub ui: Series<T>,
}

/// Realized monthly inflation: first difference of ln(CPI).
pub fn inflation_series<T: Real>(cpi: &Series<T>) -> Result<Series<T>> {
    Ok(series::log_diff(cpi)?.renamed("I"))
}

/// Conditional least squares AR(p): regress x_t on (1, x_{t−1}, …, x_{t−p})
/// for t = p+1..n. The input must be month-contiguous; bridging gaps would
/// fabricate lag pairs.
pub fn fit_ar<T: Real>(x: &Series<T>, p: usize) -> Result<ArFit<T>> {
    if p == 0 {
        return Err(Error::ZeroOrder);
    }
    let n = x.len();
    if n < p + 2 {
        return Err(Error::TooShort {
            id: x.id().to_string(),
            needed: p + 2,
            actual: n,
        });
    }
    if let Some(month) = x.first_gap() {
        return Err(Error::NonContiguous {
            id: x.id().to_string(),
            month,
        });
    }

    let values = x.values();
    let months: Vec<_> = x.months().collect();
    let rows = n - p;
    let dep_months = months[p..].to_vec();

    // A constant series is fit exactly by the intercept alone; the lag
    // columns would be collinear with it, so short-circuit the regression.
    if values.iter().all(|&v| v == values[0]) {
        let fitted = Series::new(
            format!("ar{}_fitted({})", p, x.id()),
            x.units(),
            dep_months.iter().map(|&m| (m, values[0])).collect(),
        )?;
        let residuals = Series::new(
            format!("ar{}_resid({})", p, x.id()),
            x.units(),
            dep_months.iter().map(|&m| (m, T::zero())).collect(),
        )?;
        return Ok(ArFit {
            order: p,
            intercept: values[0],
            coefficients: vec![T::zero(); p],
            fitted,
            residuals,
            sigma2: T::zero(),
        });
    }

    let y: Vec<T> = values[p..].to_vec();
    let columns: Vec<(String, Vec<T>)> = (1..=p)
        .map(|lag| {
            let col: Vec<T> = (0..rows).map(|t| values[p + t - lag]).collect();
            (format!("lag{}", lag), col)
        })
        .collect();

    let design = DesignMatrix::new(columns)?;
    let result = ols::fit(&design, &y, true)?;

    let fitted = Series::new(
        format!("ar{}_fitted({})", p, x.id()),
        x.units(),
        dep_months.iter().copied().zip(result.fitted.iter().copied()).collect(),
    )?;
    let residuals = Series::new(
        format!("ar{}_resid({})", p, x.id()),
        x.units(),
        dep_months.iter().copied().zip(result.residuals.iter().copied()).collect(),
    )?;

    Ok(ArFit {
        order: p,
        intercept: result.coef[0],
        coefficients: result.coef[1..].to_vec(),
        fitted,
        residuals,
        sigma2: result.ssr / T::of_usize(rows),
    })
}

/// Splits realized inflation into expected and unexpected parts.
///
/// In `Differences` mode the AR(p) filter runs on ΔI_t; the one-step
/// prediction Δ̂I_t gives EI_t = I_{t−1} + Δ̂I_t and UI_t is the filter
/// residual. In `Levels` mode EI is the fitted value and UI the residual.
/// Either way UI is stored so that EI + UI reproduces I exactly.
pub fn decompose_inflation<T: Real>(
    i: &Series<T>,
    mode: ArMode,
    order: usize,
) -> Result<InflationDecomposition<T>> {
    if i.len() < 5 {
        return Err(Error::TooShort {
            id: i.id().to_string(),
            needed: 5,
            actual: i.len(),
        });
    }

    let residuals = match mode {
        ArMode::Differences => {
            let delta = diff(i)?;
            fit_ar(&delta, order)?.residuals
        }
        ArMode::Levels => fit_ar(i, order)?.residuals,
    };

    // ei := i − ui, then ui re-derived from ei so the identity ei + ui == i
    // holds bitwise on every month.
    let mut ei_points = Vec::with_capacity(residuals.len());
    let mut ui_points = Vec::with_capacity(residuals.len());
    for &(month, e) in residuals.points() {
        let i_t = i.value_at(month).expect("residual months come from I");
        let ei = i_t - e;
        let ui = i_t - ei;
        debug_assert!(ei + ui == i_t);
        ei_points.push((month, ei));
        ui_points.push((month, ui));
    }

    Ok(InflationDecomposition {
        i: i.clone(),
        ei: Series::new("EI", i.units(), ei_points)?,
        ui: Series::new("UI", i.units(), ui_points)?,
    })
}

/// ACF of the level series and of its first differences, the diagnostic pair
/// the order choice is based on.
pub fn acf_diagnosis<T: Real>(
    i: &Series<T>,
    max_lag: usize,
) -> Result<(crate::acf::Acf<T>, crate::acf::Acf<T>)> {
    let levels = crate::acf::acf(i, max_lag)?;
    let differences = crate::acf::acf(&diff(i)?, max_lag)?;
    Ok((levels, differences))
}

/// Plain first difference over consecutive months.
fn diff<T: Real>(s: &Series<T>) -> Result<Series<T>> {
    if s.len() < 2 {
        return Err(Error::TooShort {
            id: s.id().to_string(),
            needed: 2,
            actual: s.len(),
        });
    }
    let points = s
        .points()
        .windows(2)
        .filter(|w| w[1].0.follows(&w[0].0))
        .map(|w| (w[1].0, w[1].1 - w[0].1))
        .collect();
    Series::new(format!("diff({})", s.id()), s.units(), points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::month::MonthStamp;

    fn m(y: i32, mo: u8) -> MonthStamp {
        MonthStamp::new(y, mo).unwrap()
    }

    fn s(values: &[f64]) -> Series {
        Series::from_values("x", "", m(2011, 1), values).unwrap()
    }

    #[test]
    fn inflation_of_constant_cpi_is_zero() {
        let cpi = s(&[200.0, 200.0, 200.0]);
        let i = inflation_series(&cpi).unwrap();
        assert!(i.values().iter().all(|v| *v == 0.0));
    }

    #[test]
    fn inflation_matches_direct_log_ratio() {
        let cpi = s(&[200.0, 201.0]);
        let i = inflation_series(&cpi).unwrap();
        assert!((i.values()[0] - (201.0f64 / 200.0).ln()).abs() < 1e-12);
        assert!((i.values()[0] - 0.0049875).abs() < 1e-6);
    }

    #[test]
    fn steady_growth_gives_constant_inflation() {
        let mut cpi = vec![200.0];
        for _ in 0..11 {
            cpi.push(cpi.last().unwrap() * 1.01);
        }
        let i = inflation_series(&s(&cpi)).unwrap();
        let expected = (1.01f64).ln();
        for v in i.values() {
            assert!((v - expected).abs() < 1e-10);
        }
    }

    #[test]
    fn fit_ar_recovers_noiseless_recursion() {
        let mut x = vec![1.0, 2.0];
        for t in 2..30 {
            x.push(0.5 * x[t - 1] - 0.3 * x[t - 2]);
        }
        let fit = fit_ar(&s(&x), 2).unwrap();
        assert!((fit.coefficients[0] - 0.5).abs() < 1e-10);
        assert!((fit.coefficients[1] + 0.3).abs() < 1e-10);
        assert!(fit.intercept.abs() < 1e-10);
        assert!(fit.residuals.values().iter().all(|e| e.abs() < 1e-10));
        assert_eq!(fit.residuals.len(), x.len() - 2);
    }

    #[test]
    fn fit_ar_rejects_order_zero_and_gaps() {
        assert!(matches!(fit_ar(&s(&[1.0, 2.0, 3.0, 4.0]), 0), Err(Error::ZeroOrder)));
        let gappy = Series::new(
            "g",
            "",
            vec![
                (m(2011, 1), 1.0),
                (m(2011, 2), 2.0),
                (m(2011, 4), 3.0),
                (m(2011, 5), 4.0),
                (m(2011, 6), 5.0),
            ],
        )
        .unwrap();
        assert!(matches!(fit_ar(&gappy, 1), Err(Error::NonContiguous { .. })));
    }

    #[test]
    fn fit_ar_stamps_residuals_at_dependent_months() {
        let fit = fit_ar(&s(&[1.0, 2.0, 1.5, 2.5, 1.8, 2.2]), 2).unwrap();
        assert_eq!(fit.residuals.first_month().unwrap(), m(2011, 3));
        assert_eq!(fit.residuals.last_month().unwrap(), m(2011, 6));
    }

    #[test]
    fn residuals_sum_to_zero_with_intercept() {
        let x = s(&[0.3, 1.2, -0.4, 0.8, 0.1, 1.0, -0.2, 0.6, 0.9, -0.1]);
        let fit = fit_ar(&x, 2).unwrap();
        let sum: f64 = fit.residuals.values().iter().sum();
        assert!(sum.abs() < 1e-9);
    }

    #[test]
    fn trending_inflation_has_zero_unexpected_component() {
        // Constant increments (dyadic, so the differences are exactly
        // constant): the AR fit on the constant series is exact and UI
        // vanishes.
        let step = 2.0f64.powi(-12);
        let i: Vec<f64> = (0..20).map(|t| 0.001 + step * t as f64).collect();
        let d = decompose_inflation(&s(&i), ArMode::Differences, 2).unwrap();
        assert!(d.ui.values().iter().all(|u| u.abs() < 1e-10));
    }

    #[test]
    fn identity_holds_bitwise_in_both_modes() {
        let i = s(&[
            0.001, 0.003, -0.002, 0.004, 0.0015, -0.001, 0.0025, 0.002, -0.0005, 0.003, 0.001,
            0.0042,
        ]);
        for mode in [ArMode::Differences, ArMode::Levels] {
            let d = decompose_inflation(&i, mode, 2).unwrap();
            for (month, ei) in d.ei.points() {
                let ui = d.ui.value_at(*month).unwrap();
                let it = i.value_at(*month).unwrap();
                assert_eq!(ei + ui, it);
            }
        }
    }

    #[test]
    fn differences_mode_loses_order_plus_one_months() {
        let i = s(&[0.1, 0.3, 0.2, 0.5, 0.4, 0.6, 0.55, 0.7]);
        let d = decompose_inflation(&i, ArMode::Differences, 2).unwrap();
        assert_eq!(d.ui.len(), i.len() - 3);
        assert_eq!(d.ui.first_month().unwrap(), m(2011, 4));
        let dl = decompose_inflation(&i, ArMode::Levels, 2).unwrap();
        assert_eq!(dl.ui.len(), i.len() - 2);
    }

    #[test]
    fn acf_diagnosis_surfaces_zero_variance_of_differences() {
        // Constant-increment series: levels vary, differences are constant.
        // 0.25 is dyadic, so the increments are exact in floating point.
        let i: Vec<f64> = (0..30).map(|t| t as f64 * 0.25).collect();
        assert!(matches!(
            acf_diagnosis(&s(&i), 5),
            Err(Error::ZeroVariance { .. })
        ));
    }

    #[test]
    fn acf_diagnosis_rejects_excessive_lag() {
        let i = s(&[0.1, 0.2, 0.15, 0.3]);
        assert!(matches!(
            acf_diagnosis(&i, 10),
            Err(Error::TooShort { .. })
        ));
    }
}
