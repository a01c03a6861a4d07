//! Error type shared by all modules.
//!
//! Variants are grouped by how the CLI reports them: data errors name the
//! offending input (series id, file, month, line); numerical errors describe
//! the degenerate computation.

use thiserror::Error;

use crate::month::MonthStamp;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Broad classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Bad or insufficient input data.
    Data,
    /// A well-formed computation hit a numerical degeneracy.
    Numerical,
}

#[derive(Debug, Error)]
pub enum Error {
    // -- data errors -------------------------------------------------------
    #[error("series '{id}': non-positive value {value} at {month}")]
    NonPositiveValue {
        id: String,
        month: MonthStamp,
        value: f64,
    },

    #[error("series '{id}': {actual} points, need at least {needed}")]
    TooShort {
        id: String,
        needed: usize,
        actual: usize,
    },

    #[error("series '{id}': months not consecutive at {month}")]
    NonContiguous { id: String, month: MonthStamp },

    #[error("no common months across the given series")]
    EmptyIntersection,

    #[error("series '{id}': duplicate month {month}")]
    DuplicateMonth { id: String, month: MonthStamp },

    #[error("'{id}': no data rows")]
    EmptyFile { id: String },

    #[error("'{id}' line {line}: malformed row: {reason}")]
    MalformedRow {
        id: String,
        line: usize,
        reason: String,
    },

    #[error("missing column '{name}'")]
    MissingColumn { name: String },

    #[error("frame: duplicate column name '{name}'")]
    DuplicateColumn { name: String },

    #[error("series '{id}': non-finite value at {month}")]
    NotFinite { id: String, month: MonthStamp },

    #[error("role {role}: no observations left in [{start}, {end}]")]
    EmptyAfterClip {
        role: String,
        start: MonthStamp,
        end: MonthStamp,
    },

    #[error("role {role} ({path}): {source}")]
    Role {
        role: String,
        path: String,
        #[source]
        source: Box<Error>,
    },

    #[error("cannot build factor(s) {factors}: {source}")]
    FactorBuild {
        factors: String,
        #[source]
        source: Box<Error>,
    },

    #[error("window start {start} is after end {end}")]
    WindowOrder { start: MonthStamp, end: MonthStamp },

    #[error("month {month} out of range for year {year}")]
    InvalidMonth { year: i32, month: u8 },

    #[error("unparseable date '{text}'")]
    InvalidDate { text: String },

    #[error("lag must be at least 1")]
    ZeroLag,

    // -- numerical errors ---------------------------------------------------
    #[error("column '{name}' has zero variance")]
    ZeroVariance { name: String },

    #[error("design matrix is rank deficient: column '{column}' is linearly dependent")]
    RankDeficient { column: String },

    #[error("{rows} rows is too few for {cols} columns")]
    TooFewRows { rows: usize, cols: usize },

    #[error("response has zero sum of squares")]
    DegenerateResponse,

    #[error("domain error: {what}")]
    DomainError { what: String },

    #[error("residual vector is identically zero")]
    AllZero,

    #[error("autoregressive order must be at least 1")]
    ZeroOrder,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        use Error::*;
        match self {
            ZeroVariance { .. } | RankDeficient { .. } | TooFewRows { .. }
            | DegenerateResponse | DomainError { .. } | AllZero | ZeroOrder => {
                ErrorKind::Numerical
            }
            Role { source, .. } | FactorBuild { source, .. } => source.kind(),
            _ => ErrorKind::Data,
        }
    }

    /// Wraps an error with the ingest role and file it came from.
    pub fn for_role(self, role: &str, path: &str) -> Error {
        Error::Role {
            role: role.to_string(),
            path: path.to_string(),
            source: Box::new(self),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinds_follow_the_exit_code_contract() {
        let data = Error::EmptyFile { id: "x".into() };
        assert_eq!(data.kind(), ErrorKind::Data);

        let num = Error::RankDeficient { column: "TB".into() };
        assert_eq!(num.kind(), ErrorKind::Numerical);

        let wrapped = Error::ZeroVariance { name: "TB".into() }.for_role("TB", "tb.csv");
        assert_eq!(wrapped.kind(), ErrorKind::Numerical);
    }

    #[test]
    fn messages_name_the_offending_input() {
        let e = Error::NonPositiveValue {
            id: "IP".into(),
            month: MonthStamp::new(2011, 3).unwrap(),
            value: -1.0,
        };
        let msg = e.to_string();
        assert!(msg.contains("IP") && msg.contains("2011-03"));
    }
}
