//! Least-squares estimation with the full printed-summary statistic set.
//!
//! The solve is Householder QR (never an explicit inverse of XᵀX); the
//! covariance needed for standard errors comes from the triangular factor.
//! With no intercept the R² is the uncentered definition 1 − SSR/Σy².

use crate::dist;
use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::linalg::{self, QrFailure};
use crate::num::Real;
use crate::stats;

/// Named regressor columns, n rows × k columns, all entries finite.
#[derive(Debug, Clone)]
pub struct DesignMatrix<T = f64> {
    names: Vec<String>,
    cols: Vec<Vec<T>>,
    n: usize,
}

impl<T: Real> DesignMatrix<T> {
    pub fn new(columns: Vec<(String, Vec<T>)>) -> Result<Self> {
        if columns.is_empty() {
            return Err(Error::TooFewRows { rows: 0, cols: 0 });
        }
        let n = columns[0].1.len();
        for (name, col) in &columns {
            if col.len() != n {
                return Err(Error::TooShort {
                    id: name.clone(),
                    needed: n,
                    actual: col.len(),
                });
            }
            if col.iter().any(|v| !v.is_finite()) {
                return Err(Error::DomainError {
                    what: format!("non-finite entry in design column '{}'", name),
                });
            }
            if columns.iter().filter(|(other, _)| other == name).count() > 1 {
                return Err(Error::DuplicateColumn { name: name.clone() });
            }
        }
        if n <= columns.len() {
            return Err(Error::TooFewRows {
                rows: n,
                cols: columns.len(),
            });
        }
        Ok(Self {
            names: columns.iter().map(|(n, _)| n.clone()).collect(),
            cols: columns.into_iter().map(|(_, c)| c).collect(),
            n,
        })
    }

    /// All frame columns as regressors, in frame order.
    pub fn from_frame(frame: &Frame<T>) -> Result<Self> {
        Self::new(
            frame
                .columns()
                .map(|(name, values)| (name.to_string(), values.to_vec()))
                .collect(),
        )
    }

    pub fn nrows(&self) -> usize {
        self.n
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn columns(&self) -> &[Vec<T>] {
        &self.cols
    }
}

/// Fit summary block: R², F test, Gaussian log-likelihood, information
/// criteria. `perfect_fit` flags SSR = 0, where F and the likelihood
/// degenerate to infinities.
#[derive(Debug, Clone, Copy)]
pub struct FitStats<T> {
    pub r_squared: T,
    pub adj_r_squared: T,
    pub f_statistic: T,
    pub f_pvalue: T,
    pub log_likelihood: T,
    pub aic: T,
    pub bic: T,
    pub df_model: usize,
    pub df_resid: usize,
    pub perfect_fit: bool,
}

/// Per-coefficient t inference.
#[derive(Debug, Clone, Copy)]
pub struct CoefInference<T> {
    pub tstat: T,
    pub pvalue: T,
    pub ci_low: T,
    pub ci_high: T,
}

/// Complete regression output, mirroring a printed OLS summary.
#[derive(Debug, Clone)]
pub struct RegressionResult<T = f64> {
    /// Regressor names; includes `const` first when an intercept was fit.
    pub names: Vec<String>,
    pub coef: Vec<T>,
    pub stderr: Vec<T>,
    pub tstat: Vec<T>,
    pub pvalue: Vec<T>,
    pub ci_low: Vec<T>,
    pub ci_high: Vec<T>,
    /// Uncentered when `intercept` is false, centered otherwise.
    pub r_squared: T,
    pub adj_r_squared: T,
    pub f_statistic: T,
    pub f_pvalue: T,
    pub log_likelihood: T,
    pub aic: T,
    pub bic: T,
    pub nobs: usize,
    pub df_resid: usize,
    pub df_model: usize,
    pub ssr: T,
    pub residuals: Vec<T>,
    pub fitted: Vec<T>,
    pub cond_no: T,
    pub resid_skew: T,
    pub resid_kurtosis: T,
    pub intercept: bool,
    pub ci_level: T,
    pub perfect_fit: bool,
}

/// OLS fit with a 95% confidence level.
pub fn fit<T: Real>(x: &DesignMatrix<T>, y: &[T], intercept: bool) -> Result<RegressionResult<T>> {
    fit_with_ci_level(x, y, intercept, T::of(0.95))
}

/// OLS fit at an explicit confidence level in (0, 1).
pub fn fit_with_ci_level<T: Real>(
    x: &DesignMatrix<T>,
    y: &[T],
    intercept: bool,
    ci_level: T,
) -> Result<RegressionResult<T>> {
    if y.len() != x.nrows() {
        return Err(Error::TooShort {
            id: "response".into(),
            needed: x.nrows(),
            actual: y.len(),
        });
    }
    if ci_level <= T::zero() || ci_level >= T::one() {
        return Err(Error::DomainError {
            what: "confidence level must lie in (0, 1)".into(),
        });
    }

    let n = x.nrows();
    let mut names: Vec<String> = Vec::new();
    let mut cols: Vec<Vec<T>> = Vec::new();
    if intercept {
        names.push("const".to_string());
        cols.push(vec![T::one(); n]);
    }
    names.extend(x.names().iter().cloned());
    cols.extend(x.columns().iter().cloned());
    let k = cols.len();
    if n <= k {
        return Err(Error::TooFewRows { rows: n, cols: k });
    }

    let sol = linalg::qr_least_squares(&cols, y).map_err(|e| match e {
        QrFailure::RankDeficient { column } => Error::RankDeficient {
            column: names[column].clone(),
        },
    })?;

    let fitted: Vec<T> = (0..n)
        .map(|i| {
            sol.beta
                .iter()
                .zip(cols.iter())
                .map(|(&b, col)| b * col[i])
                .sum::<T>()
        })
        .collect();
    let residuals: Vec<T> = y.iter().zip(&fitted).map(|(&yi, &fi)| yi - fi).collect();
    let ssr = residuals.iter().map(|&e| e * e).sum::<T>();

    let summary = summary_stats(ssr, y, n, k, intercept)?;
    let sigma2 = ssr / T::of_usize(summary.df_resid);

    let mut stderr = Vec::with_capacity(k);
    let mut tstat = Vec::with_capacity(k);
    let mut pvalue = Vec::with_capacity(k);
    let mut ci_low = Vec::with_capacity(k);
    let mut ci_high = Vec::with_capacity(k);
    for j in 0..k {
        let se = (sigma2 * sol.xtx_inv[j][j]).max(T::zero()).sqrt();
        stderr.push(se);
        if se > T::zero() {
            let inf = t_inference_level(sol.beta[j], se, summary.df_resid, ci_level)?;
            tstat.push(inf.tstat);
            pvalue.push(inf.pvalue);
            ci_low.push(inf.ci_low);
            ci_high.push(inf.ci_high);
        } else {
            // Exact fit: the coefficient carries no sampling error.
            let b = sol.beta[j];
            tstat.push(if b == T::zero() {
                T::zero()
            } else {
                T::infinity() * b.signum()
            });
            pvalue.push(if b == T::zero() { T::one() } else { T::zero() });
            ci_low.push(b);
            ci_high.push(b);
        }
    }

    let (resid_skew, resid_kurtosis) = match stats::skew_kurtosis(&residuals) {
        Ok(pair) => pair,
        Err(_) => (T::zero(), T::zero()),
    };

    let sv = linalg::singular_values(&cols)?;
    let cond_no = condition_from_singular_values(&sv, n);

    Ok(RegressionResult {
        names,
        coef: sol.beta,
        stderr,
        tstat,
        pvalue,
        ci_low,
        ci_high,
        r_squared: summary.r_squared,
        adj_r_squared: summary.adj_r_squared,
        f_statistic: summary.f_statistic,
        f_pvalue: summary.f_pvalue,
        log_likelihood: summary.log_likelihood,
        aic: summary.aic,
        bic: summary.bic,
        nobs: n,
        df_resid: summary.df_resid,
        df_model: summary.df_model,
        ssr,
        residuals,
        fitted,
        cond_no,
        resid_skew,
        resid_kurtosis,
        intercept,
        ci_level,
        perfect_fit: summary.perfect_fit,
    })
}

/// Goodness-of-fit block from the residual sum of squares.
///
/// Without an intercept, R² = 1 − SSR/Σy² (uncentered) and
/// adj = 1 − (1−R²)·n/(n−k); with one, the total sum of squares is about ȳ
/// and df_model drops by the constant. The log-likelihood is the Gaussian
/// −(n/2)(1 + ln 2π + ln(SSR/n)); AIC = −2LL + 2k, BIC = −2LL + k·ln n.
pub fn summary_stats<T: Real>(
    ssr: T,
    y: &[T],
    n: usize,
    k: usize,
    intercept: bool,
) -> Result<FitStats<T>> {
    if n <= k {
        return Err(Error::TooFewRows { rows: n, cols: k });
    }
    let yty = y.iter().map(|&v| v * v).sum::<T>();
    if yty <= T::zero() {
        return Err(Error::DegenerateResponse);
    }
    let tss = if intercept {
        let m = stats::mean(y);
        let centered = y.iter().map(|&v| (v - m) * (v - m)).sum::<T>();
        if centered <= T::zero() {
            return Err(Error::DegenerateResponse);
        }
        centered
    } else {
        yty
    };

    let nf = T::of_usize(n);
    let kf = T::of_usize(k);
    let df_model = if intercept { k - 1 } else { k };
    let df_resid = n - k;
    let r_squared = T::one() - ssr / tss;
    let adj_r_squared = if intercept {
        T::one() - (T::one() - r_squared) * (nf - T::one()) / T::of_usize(df_resid)
    } else {
        T::one() - (T::one() - r_squared) * nf / T::of_usize(df_resid)
    };

    let perfect_fit = ssr <= T::zero() || r_squared >= T::one();
    let (f_statistic, f_pvalue) = if perfect_fit {
        (T::infinity(), T::zero())
    } else {
        let f = (r_squared / T::of_usize(df_model))
            / ((T::one() - r_squared) / T::of_usize(df_resid));
        let p = dist::f_survival(f, T::of_usize(df_model), T::of_usize(df_resid))?;
        (f, p)
    };

    let log_likelihood = if perfect_fit {
        T::infinity()
    } else {
        let half = T::of(0.5);
        -half * nf * (T::one() + T::of((2.0 * std::f64::consts::PI).ln()) + (ssr / nf).ln())
    };
    let two = T::of(2.0);
    let aic = -two * log_likelihood + two * kf;
    let bic = -two * log_likelihood + kf * nf.ln();

    Ok(FitStats {
        r_squared,
        adj_r_squared,
        f_statistic,
        f_pvalue,
        log_likelihood,
        aic,
        bic,
        df_model,
        df_resid,
        perfect_fit,
    })
}

/// t statistic, two-sided p, and 95% confidence interval for one coefficient.
pub fn t_inference<T: Real>(coef: T, stderr: T, df: usize) -> Result<CoefInference<T>> {
    t_inference_level(coef, stderr, df, T::of(0.95))
}

/// Same at an explicit confidence level.
pub fn t_inference_level<T: Real>(
    coef: T,
    stderr: T,
    df: usize,
    level: T,
) -> Result<CoefInference<T>> {
    if df < 1 {
        return Err(Error::DomainError {
            what: "t inference requires df ≥ 1".into(),
        });
    }
    if stderr <= T::zero() {
        return Err(Error::DomainError {
            what: "t inference requires stderr > 0".into(),
        });
    }
    let dff = T::of_usize(df);
    let tstat = coef / stderr;
    let pvalue = dist::student_t_two_sided(tstat, dff)?;
    let half = T::of(0.5);
    let q = dist::student_t_quantile(half + half * level, dff)?;
    Ok(CoefInference {
        tstat,
        pvalue,
        ci_low: coef - q * stderr,
        ci_high: coef + q * stderr,
    })
}

/// σ_max/σ_min of the design's singular values; +∞ when the smallest
/// singular value is numerically zero (below n·ε·σ_max).
pub fn condition_number<T: Real>(x: &DesignMatrix<T>) -> Result<T> {
    let sv = linalg::singular_values(x.columns())?;
    Ok(condition_from_singular_values(&sv, x.nrows()))
}

fn condition_from_singular_values<T: Real>(sv: &[T], n: usize) -> T {
    let smax = sv[0];
    let smin = sv[sv.len() - 1];
    if smax <= T::zero() || smin <= T::of_usize(n) * T::epsilon() * smax {
        T::infinity()
    } else {
        smax / smin
    }
}
