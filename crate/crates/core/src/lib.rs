//! Monthly macroeconomic factor attribution of stock-index returns.
//!
//! The crate ingests local CSV exports of macro series, builds the eight
//! economic risk factors (bill yield, oil growth, industrial-production
//! growth, expected/unexpected inflation from an AR filter, ex-post real
//! rate, risk premium, term structure), standardizes everything, fits a
//! no-intercept OLS model, and computes the printed-summary statistics and
//! residual diagnostics.
//!
//! Numeric code is generic over the scalar type ([`num::Real`], i.e. `f32`
//! or `f64`); the domain types default their scalar parameter to `f64`, so
//! `Series`, `Frame`, and friends name the double-precision instantiations
//! used by the pipeline.

pub mod acf;
pub mod diagnostics;
pub mod dist;
pub mod error;
pub mod factors;
pub mod frame;
pub mod inflation;
pub mod ingest;
pub mod linalg;
pub mod month;
pub mod num;
pub mod ols;
pub mod series;
pub mod stats;

pub use error::{Error, ErrorKind, Result};
pub use frame::{CorrelationMatrix, Frame, SummaryStats};
pub use month::{DayStamp, MonthStamp};
pub use num::Real;
pub use series::Series;

/// Double-precision aliases for the result types the pipeline hands around.
pub type RegressionResult = ols::RegressionResult<f64>;
pub type DiagnosticsReport = diagnostics::DiagnosticsReport<f64>;
pub type FactorSet = factors::FactorSet<f64>;
pub type ArFit = inflation::ArFit<f64>;
