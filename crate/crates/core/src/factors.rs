//! Construction of the named regression factors from the raw dataset, their
//! alignment on common months, and the standardization of response and
//! regressors that removes the intercept from the model.

use crate::error::{Error, Result};
use crate::frame::{self, Frame};
use crate::inflation::{self, ArMode};
use crate::ingest::RawDataset;
use crate::month::MonthStamp;
use crate::num::Real;
use crate::series::{self, Series};

/// Column order of the assembled factor frame: response first, then the
/// regressors in model order.
pub const RESPONSE: &str = "SPYRET";
pub const REGRESSORS: [&str; 8] = ["TB", "OG", "MP", "EI", "UI", "RHO", "UPR", "UTS"];

/// Factor construction choices.
#[derive(Debug, Clone, Copy)]
pub struct FactorConfig {
    /// Include the annual industrial-production growth factor.
    pub yp_enabled: bool,
    /// Order of the inflation filter.
    pub ar_order: usize,
    /// Whether the filter runs on differences or levels.
    pub ar_mode: ArMode,
}

impl Default for FactorConfig {
    fn default() -> Self {
        Self {
            yp_enabled: false,
            ar_order: 2,
            ar_mode: ArMode::Differences,
        }
    }
}

/// An aligned factor frame. `nobs` always equals the index length.
#[derive(Debug, Clone)]
pub struct FactorSet<T = f64> {
    pub frame: Frame<T>,
    pub standardized: bool,
    pub nobs: usize,
}

/// Output of [`build_factor_set`]: the aligned raw columns, the standardized
/// copy the regression runs on, and an accounting of what alignment dropped.
#[derive(Debug, Clone)]
pub struct FactorBuild<T = f64> {
    pub raw: FactorSet<T>,
    pub standardized: FactorSet<T>,
    /// Months present in at least one factor but not all of them.
    pub dropped_months: usize,
    /// Factor whose first month bounds the start of the common window.
    pub binding_start: (String, MonthStamp),
    /// Factor whose last month bounds the end of the common window.
    pub binding_end: (String, MonthStamp),
}

/// Monthly growth of industrial production: ln(IP_t) − ln(IP_{t−1}).
pub fn build_mp<T: Real>(ip: &Series<T>) -> Result<Series<T>> {
    Ok(series::log_diff(ip)?.renamed("MP"))
}

/// Annual growth of industrial production: ln(IP_t) − ln(IP_{t−12}).
pub fn build_yp<T: Real>(ip: &Series<T>) -> Result<Series<T>> {
    if ip.len() < 13 {
        return Err(Error::TooShort {
            id: ip.id().to_string(),
            needed: 13,
            actual: ip.len(),
        });
    }
    if let Some(&(month, value)) = ip.points().iter().find(|(_, v)| *v <= T::zero()) {
        return Err(Error::NonPositiveValue {
            id: ip.id().to_string(),
            month,
            value: value.to_f64().unwrap_or(f64::NAN),
        });
    }
    let points: Vec<(MonthStamp, T)> = ip
        .points()
        .iter()
        .filter_map(|&(month, v)| {
            let target = month.add_months(12);
            ip.value_at(target).map(|v12| (target, v12.ln() - v.ln()))
        })
        .collect();
    if points.is_empty() {
        return Err(Error::EmptyIntersection);
    }
    Series::new("YP", "log change", points)
}

/// Oil growth: month-over-month log relative of the crude-petroleum PPI.
pub fn build_og<T: Real>(ppi_crude: &Series<T>) -> Result<Series<T>> {
    Ok(series::log_diff(ppi_crude)?.renamed("OG"))
}

/// Ex-post real bill return: RHO_t = TB_{t−1} − I_t.
pub fn build_rho<T: Real>(tb: &Series<T>, i: &Series<T>) -> Result<Series<T>> {
    let lagged = series::lag(tb, 1)?;
    subtract(&lagged, i, "RHO")
}

/// Risk-premium factor: low-grade bond return minus long-term government
/// bond return, same month.
pub fn build_upr<T: Real>(lowgrade_ret: &Series<T>, lgb_ret: &Series<T>) -> Result<Series<T>> {
    subtract(lowgrade_ret, lgb_ret, "UPR")
}

/// Term-structure factor: UTS_t = LGB_t − TB_{t−1}.
pub fn build_uts<T: Real>(lgb_ret: &Series<T>, tb: &Series<T>) -> Result<Series<T>> {
    let lagged = series::lag(tb, 1)?;
    subtract(lgb_ret, &lagged, "UTS")
}

fn subtract<T: Real>(a: &Series<T>, b: &Series<T>, id: &str) -> Result<Series<T>> {
    let points: Vec<(MonthStamp, T)> = a
        .points()
        .iter()
        .filter_map(|&(month, va)| b.value_at(month).map(|vb| (month, va - vb)))
        .collect();
    if points.is_empty() {
        return Err(Error::EmptyIntersection);
    }
    Series::new(id, a.units(), points)
}

/// Builds every factor, aligns on the common months, and standardizes all
/// columns including the response. Nothing is dropped silently: the result
/// carries the dropped-month count and which factors bound the window.
pub fn build_factor_set(raw: &RawDataset, cfg: &FactorConfig) -> Result<FactorBuild<f64>> {
    let spyret = raw.index_returns.renamed(RESPONSE);
    let tb = raw.tb.renamed("TB");
    let og = build_og(&raw.ppi_crude)?;
    let mp = build_mp(&raw.ip)?;

    let i = inflation::inflation_series(&raw.cpi)
        .map_err(|e| factor_context(e, "EI, UI, RHO"))?;
    let decomp = inflation::decompose_inflation(&i, cfg.ar_mode, cfg.ar_order)
        .map_err(|e| factor_context(e, "EI, UI"))?;
    let rho = build_rho(&raw.tb, &i).map_err(|e| factor_context(e, "RHO"))?;

    let upr = build_upr(&raw.lowgrade_return, &raw.lgb_return)?;
    let uts = build_uts(&raw.lgb_return, &raw.tb)?;

    let mut all: Vec<Series<f64>> = vec![spyret, tb, og, mp, decomp.ei, decomp.ui, rho, upr, uts];
    if cfg.yp_enabled {
        all.push(build_yp(&raw.ip)?);
    }

    let frame = frame::align(&all)?;
    let nobs = frame.nrows();

    let mut months_union: Vec<MonthStamp> = Vec::new();
    for s in &all {
        for m in s.months() {
            if !months_union.contains(&m) {
                months_union.push(m);
            }
        }
    }
    let dropped_months = months_union.len() - nobs;
    let binding_start = all
        .iter()
        .max_by_key(|s| s.first_month().expect("aligned factors are nonempty"))
        .map(|s| (s.id().to_string(), s.first_month().unwrap()))
        .expect("nonempty factor list");
    let binding_end = all
        .iter()
        .min_by_key(|s| s.last_month().expect("aligned factors are nonempty"))
        .map(|s| (s.id().to_string(), s.last_month().unwrap()))
        .expect("nonempty factor list");

    let standardized_frame = standardize_frame(&frame)?;

    Ok(FactorBuild {
        raw: FactorSet {
            frame,
            standardized: false,
            nobs,
        },
        standardized: FactorSet {
            frame: standardized_frame,
            standardized: true,
            nobs,
        },
        dropped_months,
        binding_start,
        binding_end,
    })
}

/// Standardizes every column of a frame (sample std, divisor n−1).
pub fn standardize_frame<T: Real>(frame: &Frame<T>) -> Result<Frame<T>> {
    let mut columns = Vec::with_capacity(frame.ncols());
    for (name, _) in frame.columns().map(|(n, v)| (n.to_string(), v)) {
        let col = frame.column_series(&name).expect("column exists");
        let z = series::standardize(&col)?;
        columns.push((name, z.values()));
    }
    Frame::new(frame.index().to_vec(), columns)
}

fn factor_context(e: Error, factors: &str) -> Error {
    Error::FactorBuild {
        factors: factors.to_string(),
        source: Box::new(e),
    }
}
