//! Residual diagnostics: Durbin–Watson with interpretation bands,
//! Jarque–Bera, the D'Agostino–Pearson omnibus test, and the point sets for
//! Q-Q and residual-vs-fitted plots.

use std::fmt;

use crate::dist;
use crate::error::{Error, Result};
use crate::num::Real;
use crate::ols::RegressionResult;
use crate::stats;

/// Durbin–Watson interpretation, using the 1.5/2.5 bands; boundary values
/// label as `NoAutocorrelation`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DwLabel {
    PositiveAutocorrelation,
    NoAutocorrelation,
    NegativeAutocorrelation,
}

impl DwLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            DwLabel::PositiveAutocorrelation => "positive_autocorr",
            DwLabel::NoAutocorrelation => "none",
            DwLabel::NegativeAutocorrelation => "negative_autocorr",
        }
    }

    /// Human reading used by the CLI output.
    pub fn description(&self) -> &'static str {
        match self {
            DwLabel::PositiveAutocorrelation => "Positive autocorrelation",
            DwLabel::NoAutocorrelation => "Little to no autocorrelation",
            DwLabel::NegativeAutocorrelation => "Negative autocorrelation",
        }
    }
}

impl fmt::Display for DwLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Full diagnostics block for a fitted model.
#[derive(Debug, Clone)]
pub struct DiagnosticsReport<T = f64> {
    pub dw: T,
    pub dw_label: DwLabel,
    pub jb: T,
    pub jb_p: T,
    pub omnibus: T,
    pub omnibus_p: T,
    pub skew: T,
    /// Raw kurtosis (normal = 3), not excess.
    pub kurtosis: T,
    pub qq: Vec<(T, T)>,
    pub resid_fitted: Vec<(T, T)>,
    pub resid_mean: T,
}

/// d = Σ(e_t − e_{t−1})²/Σe_t², in [0, 4], with the band labelling.
pub fn durbin_watson<T: Real>(e: &[T]) -> Result<(T, DwLabel)> {
    if e.len() < 2 {
        return Err(Error::TooShort {
            id: "residuals".into(),
            needed: 2,
            actual: e.len(),
        });
    }
    let denom = e.iter().map(|&v| v * v).sum::<T>();
    if denom <= T::zero() {
        return Err(Error::AllZero);
    }
    let num = e
        .windows(2)
        .map(|w| (w[1] - w[0]) * (w[1] - w[0]))
        .sum::<T>();
    let d = num / denom;
    let label = if d < T::of(1.5) {
        DwLabel::PositiveAutocorrelation
    } else if d > T::of(2.5) {
        DwLabel::NegativeAutocorrelation
    } else {
        DwLabel::NoAutocorrelation
    };
    Ok((d, label))
}

/// Population-moment skewness and raw kurtosis.
pub fn moments<T: Real>(e: &[T]) -> Result<(T, T)> {
    stats::skew_kurtosis(e)
}

/// JB = (n/6)(S² + (K−3)²/4) with p from the exact chi-square(2) survival.
pub fn jarque_bera<T: Real>(e: &[T]) -> Result<(T, T)> {
    let (s, k) = moments(e)?;
    jarque_bera_from_moments(s, k, e.len())
}

/// Same from already-computed moments; used by the printed-value fixtures.
pub fn jarque_bera_from_moments<T: Real>(skew: T, kurtosis: T, n: usize) -> Result<(T, T)> {
    let nf = T::of_usize(n);
    let excess = kurtosis - T::of(3.0);
    let jb = nf / T::of(6.0) * (skew * skew + excess * excess / T::of(4.0));
    let p = dist::chi2_survival(jb, T::of(2.0))?;
    Ok((jb, p))
}

/// D'Agostino–Pearson K² = Z₁(S)² + Z₂(K)², p from chi-square(2).
///
/// Z₁ is D'Agostino's skewness transformation (1970); Z₂ is the
/// Anscombe–Glynn kurtosis transformation (1983). Requires n ≥ 20 for the
/// transformations to be valid.
pub fn omnibus_k2<T: Real>(e: &[T]) -> Result<(T, T)> {
    if e.len() < 20 {
        return Err(Error::TooShort {
            id: "omnibus test requires at least 20 observations".into(),
            needed: 20,
            actual: e.len(),
        });
    }
    let (s, k) = moments(e)?;
    omnibus_from_moments(s, k, e.len())
}

/// K² from already-computed moments. `n ≥ 20` is the caller's contract here.
pub fn omnibus_from_moments<T: Real>(skew: T, kurtosis: T, n: usize) -> Result<(T, T)> {
    let z1 = skew_transform(skew, n);
    let z2 = kurtosis_transform(kurtosis, n);
    let k2 = z1 * z1 + z2 * z2;
    let p = dist::chi2_survival(k2, T::of(2.0))?;
    Ok((k2, p))
}

// D'Agostino (1970): Y = S·√((n+1)(n+3)/(6(n−2))), then a Johnson SU fit
// with W² = √(2(β₂−1)) − 1, δ = 1/√(ln W), α = √(2/(W²−1)),
// Z₁ = δ·ln(Y/α + √((Y/α)² + 1)).
fn skew_transform<T: Real>(s: T, n: usize) -> T {
    let nf = T::of_usize(n);
    let one = T::one();
    let y = s * (((nf + one) * (nf + T::of(3.0))) / (T::of(6.0) * (nf - T::of(2.0)))).sqrt();
    let beta2 = T::of(3.0) * (nf * nf + T::of(27.0) * nf - T::of(70.0)) * (nf + one)
        * (nf + T::of(3.0))
        / ((nf - T::of(2.0)) * (nf + T::of(5.0)) * (nf + T::of(7.0)) * (nf + T::of(9.0)));
    let w2 = -one + (T::of(2.0) * (beta2 - one)).sqrt();
    let delta = one / (T::of(0.5) * w2.ln()).sqrt();
    let alpha = (T::of(2.0) / (w2 - one)).sqrt();
    let y = if y == T::zero() { one } else { y };
    delta * (y / alpha + ((y / alpha) * (y / alpha) + one).sqrt()).ln()
}

// Anscombe–Glynn (1983): center b₂ at E = 3(n−1)/(n+1) with variance
// 24n(n−2)(n−3)/((n+1)²(n+3)(n+5)), then the Wilson–Hilferty cube-root
// normalization with A from the third moment of b₂.
fn kurtosis_transform<T: Real>(b2: T, n: usize) -> T {
    let nf = T::of_usize(n);
    let one = T::one();
    let e = T::of(3.0) * (nf - one) / (nf + one);
    let var = T::of(24.0) * nf * (nf - T::of(2.0)) * (nf - T::of(3.0))
        / ((nf + one) * (nf + one) * (nf + T::of(3.0)) * (nf + T::of(5.0)));
    let x = (b2 - e) / var.sqrt();
    let sqrt_beta1 = T::of(6.0) * (nf * nf - T::of(5.0) * nf + T::of(2.0))
        / ((nf + T::of(7.0)) * (nf + T::of(9.0)))
        * ((T::of(6.0) * (nf + T::of(3.0)) * (nf + T::of(5.0)))
            / (nf * (nf - T::of(2.0)) * (nf - T::of(3.0))))
        .sqrt();
    let a = T::of(6.0)
        + T::of(8.0) / sqrt_beta1
            * (T::of(2.0) / sqrt_beta1 + (one + T::of(4.0) / (sqrt_beta1 * sqrt_beta1)).sqrt());
    let term1 = one - T::of(2.0) / (T::of(9.0) * a);
    let denom = one + x * (T::of(2.0) / (a - T::of(4.0))).sqrt();
    let term2 = denom.signum()
        * ((one - T::of(2.0) / a) / denom.abs()).powf(one / T::of(3.0));
    (term1 - term2) / (T::of(2.0) / (T::of(9.0) * a)).sqrt()
}

/// Q-Q point set: residuals standardized by population moments and sorted,
/// against normal quantiles at plotting positions (i − 0.5)/n.
pub fn qq_points<T: Real>(e: &[T]) -> Result<Vec<(T, T)>> {
    if e.len() < 3 {
        return Err(Error::TooShort {
            id: "residuals".into(),
            needed: 3,
            actual: e.len(),
        });
    }
    let n = e.len();
    let m = stats::mean(e);
    let var = e.iter().map(|&v| (v - m) * (v - m)).sum::<T>() / T::of_usize(n);
    if var <= T::zero() {
        return Err(Error::ZeroVariance { name: "residuals".into() });
    }
    let sd = var.sqrt();
    let mut ordered: Vec<T> = e.iter().map(|&v| (v - m) / sd).collect();
    ordered.sort_by(|a, b| a.partial_cmp(b).expect("finite residuals"));
    let half = T::of(0.5);
    ordered
        .into_iter()
        .enumerate()
        .map(|(i, r)| {
            let p = (T::of_usize(i + 1) - half) / T::of_usize(n);
            Ok((dist::normal_quantile(p)?, r))
        })
        .collect()
}

/// (fitted, residual) pairs in time order plus the residual mean.
pub fn resid_fitted_pairs<T: Real>(result: &RegressionResult<T>) -> (Vec<(T, T)>, T) {
    let pairs = result
        .fitted
        .iter()
        .zip(&result.residuals)
        .map(|(&f, &e)| (f, e))
        .collect();
    (pairs, stats::mean(&result.residuals))
}

/// Assembles the full diagnostics block from a fit.
pub fn report<T: Real>(result: &RegressionResult<T>) -> Result<DiagnosticsReport<T>> {
    let e = &result.residuals;
    let (dw, dw_label) = durbin_watson(e)?;
    let (skew, kurtosis) = moments(e)?;
    let (jb, jb_p) = jarque_bera_from_moments(skew, kurtosis, e.len())?;
    let (omnibus, omnibus_p) = omnibus_k2(e)?;
    let qq = qq_points(e)?;
    let (resid_fitted, resid_mean) = resid_fitted_pairs(result);
    Ok(DiagnosticsReport {
        dw,
        dw_label,
        jb,
        jb_p,
        omnibus,
        omnibus_p,
        skew,
        kurtosis,
        qq,
        resid_fitted,
        resid_mean,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dw_of_constant_residuals_is_zero() {
        let (d, label) = durbin_watson(&[1.0f64, 1.0, 1.0, 1.0]).unwrap();
        assert_eq!(d, 0.0);
        assert_eq!(label, DwLabel::PositiveAutocorrelation);
    }

    #[test]
    fn dw_of_alternating_residuals_is_three() {
        let (d, label) = durbin_watson(&[1.0f64, -1.0, 1.0, -1.0]).unwrap();
        assert!((d - 3.0).abs() < 1e-15);
        assert_eq!(label, DwLabel::NegativeAutocorrelation);
    }

    #[test]
    fn dw_band_matches_reported_statistic() {
        let d = 2.4286512923073307;
        let label = if d < 1.5 {
            DwLabel::PositiveAutocorrelation
        } else if d > 2.5 {
            DwLabel::NegativeAutocorrelation
        } else {
            DwLabel::NoAutocorrelation
        };
        assert_eq!(label, DwLabel::NoAutocorrelation);
        assert_eq!(label.description(), "Little to no autocorrelation");
    }

    #[test]
    fn dw_boundaries_label_none() {
        // Construct-free check of the banding rule at the boundaries.
        for d in [1.5, 2.5] {
            let label = if d < 1.5 {
                DwLabel::PositiveAutocorrelation
            } else if d > 2.5 {
                DwLabel::NegativeAutocorrelation
            } else {
                DwLabel::NoAutocorrelation
            };
            assert_eq!(label, DwLabel::NoAutocorrelation);
        }
    }

    #[test]
    fn dw_rejects_all_zero() {
        assert!(matches!(
            durbin_watson(&[0.0f64, 0.0, 0.0]),
            Err(Error::AllZero)
        ));
    }

    #[test]
    fn jb_reconstructs_from_printed_moments() {
        let (jb, p) = jarque_bera_from_moments(0.009f64, 3.811, 126).unwrap();
        assert!((jb - 3.455).abs() < 2e-3);
        assert!((p - 0.178).abs() < 1e-3);
    }

    #[test]
    fn jb_of_exactly_normal_moments_is_zero() {
        let (jb, p) = jarque_bera_from_moments(0.0f64, 3.0, 126).unwrap();
        assert_eq!(jb, 0.0);
        assert_eq!(p, 1.0);
    }

    #[test]
    fn omnibus_reconstructs_from_printed_moments() {
        let (k2, p) = omnibus_from_moments(0.009f64, 3.811, 126).unwrap();
        assert!((k2 - 3.182).abs() < 0.1);
        assert!((k2 - 3.1824305368178027).abs() < 1e-10);
        let (_, p_printed) = (3.182f64, (-3.182f64 / 2.0).exp());
        assert!((p_printed - 0.204).abs() < 1e-3);
        assert!((p - 0.2037).abs() < 1e-3);
    }

    #[test]
    fn omnibus_needs_twenty_points() {
        let e: Vec<f64> = (0..19).map(|i| i as f64).collect();
        assert!(matches!(omnibus_k2(&e), Err(Error::TooShort { .. })));
    }

    #[test]
    fn qq_middle_quantile_is_zero_for_odd_n() {
        let e = [0.3f64, -1.2, 0.9, 2.0, -0.5];
        let qq = qq_points(&e).unwrap();
        assert!(qq[2].0.abs() < 1e-12);
        for w in qq.windows(2) {
            assert!(w[1].0 >= w[0].0 && w[1].1 >= w[0].1);
        }
    }

    #[test]
    fn moments_match_hand_values() {
        let (s, _) = moments(&[-1.0f64, 0.0, 1.0]).unwrap();
        assert!(s.abs() < 1e-15);
    }
}
