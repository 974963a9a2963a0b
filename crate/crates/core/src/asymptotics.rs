//! Large-dimension predictions and how far the computed values are from
//! them.
//!
//! With `alpha = 2(n - 1)` the leading forms are
//!
//! ```text
//! L ~ (pi/alpha)(1 + kappa/alpha)      kappa = 2 ln 2
//! W ~ L (1 - 2/alpha)
//! H ~ ((alpha - 2) L / alpha)^(-2/(alpha - 2))
//! Lambda_0(n, m) ~ m - n/m
//! K_0(n) ~ sqrt(n)
//! ln MI(n) ~ sqrt(n) ln sqrt(n) + sqrt(n)
//! ```
//!
//! [`deviation_report`] tabulates computed against predicted values under
//! both a ratio scaling and a difference scaling.

use std::f64::consts::{FRAC_PI_2, LN_2, PI};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{alpha_of, half_length, profile_alpha, solve_geometry};
use crate::index::index_report;
use crate::kernels::SolverConfig;
use crate::spectrum::{steklov_on, Parity};

pub const KAPPA: f64 = 2.0 * LN_2;

/// Leading-order geometry for exponent `alpha > 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeometryPrediction {
    pub alpha: f64,
    pub l_bar: f64,
    pub w_bar: f64,
    pub h_bar: f64,
}

pub fn predicted_geometry(alpha: f64) -> Result<GeometryPrediction> {
    if !(alpha > 2.0) || !alpha.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "predictions need a finite alpha > 2, got {alpha}"
        )));
    }
    let l_bar = PI / alpha * (1.0 + KAPPA / alpha);
    let w_bar = l_bar * (1.0 - 2.0 / alpha);
    let h_bar = ((alpha - 2.0) * l_bar / alpha).powf(-2.0 / (alpha - 2.0));
    Ok(GeometryPrediction {
        alpha,
        l_bar,
        w_bar,
        h_bar,
    })
}

/// `m - n/m`.
pub fn predicted_lambda(n: u32, m: u32) -> f64 {
    let m = f64::from(m);
    m - f64::from(n) / m
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CountPrediction {
    pub n: u32,
    pub k_bar: f64,
    pub log_mi_bar: f64,
}

pub fn predicted_counts(n: u32) -> CountPrediction {
    let root = f64::from(n).sqrt();
    CountPrediction {
        n,
        k_bar: root,
        log_mi_bar: root * root.ln() + root,
    }
}

/// All predictions for one dimension, and for one mode if `m` is given.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticPrediction {
    pub n: u32,
    pub alpha: f64,
    pub l_bar: f64,
    pub h_bar: f64,
    pub w_bar: f64,
    pub m: Option<u32>,
    pub lambda_bar: Option<f64>,
    pub k_bar: f64,
    pub log_mi_bar: f64,
    pub kappa: f64,
}

impl AsymptoticPrediction {
    pub fn new(n: u32, m: Option<u32>) -> Result<Self> {
        let alpha = alpha_of(n);
        let g = predicted_geometry(alpha)?;
        let c = predicted_counts(n);
        if m == Some(0) {
            return Err(Error::InvalidArgument("the eigenvalue prediction needs m >= 1".into()));
        }
        Ok(Self {
            n,
            alpha,
            l_bar: g.l_bar,
            h_bar: g.h_bar,
            w_bar: g.w_bar,
            m,
            lambda_bar: m.map(|m| predicted_lambda(n, m)),
            k_bar: c.k_bar,
            log_mi_bar: c.log_mi_bar,
            kappa: KAPPA,
        })
    }
}

/// `c_alpha(x) / c_inf(x)` where `c_alpha(x) = f(L x)^(-(alpha-2)/2)` is the
/// rescaled profile and `c_inf(x) = cos(pi x / 2)`.
pub fn c_ratio(alpha: f64, x: f64, config: &SolverConfig) -> Result<f64> {
    if !(alpha > 2.0) || !alpha.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "the rescaled profile needs a finite alpha > 2, got {alpha}"
        )));
    }
    if !(x.abs() < 1.0) {
        return Err(Error::InvalidArgument(format!("c_ratio needs |x| < 1, got {x}")));
    }
    if x == 0.0 {
        return Ok(1.0);
    }
    let l = half_length(alpha)?;
    let f = profile_alpha(alpha, l * x.abs(), config)?.f;
    let c = (-(alpha - 2.0) / 2.0 * f.ln()).exp();
    Ok(c / (FRAC_PI_2 * x).cos())
}

/// Which quantity a deviation report compares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeviationKind {
    Lambda,
    #[serde(rename = "K0")]
    K0,
    #[serde(rename = "logMI")]
    LogMi,
    Geometry,
}

impl fmt::Display for DeviationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DeviationKind::Lambda => "lambda",
            DeviationKind::K0 => "K0",
            DeviationKind::LogMi => "logMI",
            DeviationKind::Geometry => "geometry",
        })
    }
}

impl FromStr for DeviationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lambda" => Ok(DeviationKind::Lambda),
            "k0" => Ok(DeviationKind::K0),
            "logmi" | "mi" => Ok(DeviationKind::LogMi),
            "geometry" => Ok(DeviationKind::Geometry),
            _ => Err(Error::InvalidArgument(format!(
                "unknown deviation kind {s:?} (expected lambda, K0, logMI or geometry)"
            ))),
        }
    }
}

/// One computed/predicted pair.
///
/// `scaled_error` is always the difference-type scaling and always finite;
/// `ratio_error` is `computed / predicted - 1`, left out where the
/// prediction is too close to zero for the ratio to mean anything.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeviationRow {
    pub n: u32,
    pub m: Option<u32>,
    pub quantity: String,
    pub computed: f64,
    pub predicted: f64,
    pub scaled_error: f64,
    pub scaling_label: String,
    pub ratio_error: Option<f64>,
    /// The prediction is within 1 of zero (the eigenvalue rows near
    /// `n = m^2`), so the ratio scaling spikes.
    pub spike: bool,
    /// Whether the underlying count is certified (always true for
    /// quantities that need no certification).
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeviationReport {
    pub kind: DeviationKind,
    pub rows: Vec<DeviationRow>,
}

impl DeviationReport {
    /// Largest `|scaled_error|` over the rows, optionally restricted to one
    /// quantity.
    pub fn max_abs_scaled(&self, quantity: Option<&str>) -> f64 {
        self.rows
            .iter()
            .filter(|r| quantity.is_none_or(|q| r.quantity == q))
            .map(|r| r.scaled_error.abs())
            .fold(0.0, f64::max)
    }
}

fn ratio(computed: f64, predicted: f64) -> Option<f64> {
    (predicted.abs() >= 1.0).then(|| computed / predicted - 1.0)
}

/// Compare computed values against their predictions for every `n` (and
/// every `m` for eigenvalues). Rows are computed in parallel and come back
/// ordered by `(n, m)`.
pub fn deviation_report(
    kind: DeviationKind,
    ns: &[u32],
    ms: &[u32],
    config: &SolverConfig,
) -> Result<DeviationReport> {
    if let Some(&n) = ns.iter().find(|&&n| n < 3) {
        return Err(Error::InvalidArgument(format!(
            "deviation reports need n >= 3 (log n and alpha > 2), got {n}"
        )));
    }
    if kind == DeviationKind::Lambda && (ms.is_empty() || ms.contains(&0)) {
        return Err(Error::InvalidArgument("eigenvalue deviations need modes m >= 1".into()));
    }
    let per_n: Vec<Vec<DeviationRow>> = ns
        .par_iter()
        .map(|&n| rows_for(kind, n, ms, config))
        .collect::<Result<_>>()?;
    Ok(DeviationReport {
        kind,
        rows: per_n.into_iter().flatten().collect(),
    })
}

fn rows_for(kind: DeviationKind, n: u32, ms: &[u32], config: &SolverConfig) -> Result<Vec<DeviationRow>> {
    let log_n = f64::from(n).ln();
    let row = |m, quantity: &str, computed: f64, predicted: f64, scaled: f64, label: &str, certified| DeviationRow {
        n,
        m,
        quantity: quantity.to_string(),
        computed,
        predicted,
        scaled_error: scaled,
        scaling_label: label.to_string(),
        ratio_error: ratio(computed, predicted),
        spike: predicted.abs() < 1.0,
        certified,
    };
    match kind {
        DeviationKind::Lambda => {
            let geometry = solve_geometry(n, config)?;
            ms.iter()
                .map(|&m| {
                    let lambda = steklov_on(&geometry, m, Parity::Even, config)?.lambda;
                    let bar = predicted_lambda(n, m);
                    Ok(row(Some(m), "lambda", lambda, bar, (lambda - bar) / log_n, "(lambda-lambda_bar)/log(n)", true))
                })
                .collect()
        }
        DeviationKind::K0 | DeviationKind::LogMi => {
            let report = index_report(n, config)?;
            let bar = predicted_counts(n);
            Ok(vec![if kind == DeviationKind::K0 {
                let k0 = f64::from(report.k0);
                row(None, "K0", k0, bar.k_bar, (bar.k_bar - k0) / log_n, "(K_bar-K0)/log(n)", report.certified)
            } else {
                let log_mi = report.log_morse_index;
                row(
                    None,
                    "logMI",
                    log_mi,
                    bar.log_mi_bar,
                    (bar.log_mi_bar - log_mi) / (log_n * log_n),
                    "(logMI_bar-logMI)/log(n)^2",
                    report.certified,
                )
            }])
        }
        DeviationKind::Geometry => {
            let g = solve_geometry(n, config)?;
            let bar = predicted_geometry(g.alpha)?;
            let label = "alpha*(value-bar)/bar";
            Ok([("L", g.l, bar.l_bar), ("W", g.w, bar.w_bar), ("H", g.h, bar.h_bar)]
                .into_iter()
                .map(|(q, v, b)| row(None, q, v, b, g.alpha * (v - b) / b, label, true))
                .collect())
        }
    }
}

/// Integers from `lo` to `hi` (both included), spaced evenly in `log n` with
/// about `per_decade` points per factor of ten; duplicates after rounding
/// are dropped.
pub fn log_spaced(lo: u32, hi: u32, per_decade: u32) -> Vec<u32> {
    if lo == 0 || hi < lo || per_decade == 0 {
        return Vec::new();
    }
    if lo == hi {
        return vec![lo];
    }
    let (a, b) = (f64::from(lo).log10(), f64::from(hi).log10());
    let steps = ((b - a) * f64::from(per_decade)).ceil().max(1.0) as u32;
    let mut out: Vec<u32> = (0..=steps)
        .map(|k| 10f64.powf(a + (b - a) * f64::from(k) / f64::from(steps)).round() as u32)
        .map(|n| n.clamp(lo, hi))
        .collect();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kappa_is_two_log_two() {
        assert_eq!(KAPPA, 2.0 * 2f64.ln());
    }

    #[test]
    fn leading_geometry_at_one_hundred() {
        let p = predicted_geometry(198.0).unwrap();
        assert!((p.w_bar - 0.01582).abs() < 5e-5, "{}", p.w_bar);
        assert!((p.h_bar - 1.04322).abs() < 5e-3, "{}", p.h_bar);
        for alpha in [1e3, 1e5, 1e7] {
            let p = predicted_geometry(alpha).unwrap();
            assert!((alpha * p.l_bar / PI - 1.0).abs() < 2.0 / alpha);
        }
        assert!(predicted_geometry(2.0).is_err());
    }

    #[test]
    fn eigenvalue_and_count_predictions() {
        assert_eq!(predicted_lambda(100, 10), 0.0);
        assert_eq!(predicted_lambda(4, 2), 0.0);
        assert_eq!(predicted_lambda(2, 2), 1.0);
        let c = predicted_counts(100);
        assert_eq!(c.k_bar, 10.0);
        assert!((c.log_mi_bar - (10.0 * 10f64.ln() + 10.0)).abs() < 1e-12);
        assert_eq!(predicted_counts(4).k_bar, 2.0);
    }

    #[test]
    fn rescaled_profile_approaches_cosine() {
        let cfg = SolverConfig::default();
        assert_eq!(c_ratio(50.0, 0.0, &cfg).unwrap(), 1.0);
        let grid: Vec<f64> = (1..10).map(|k| 0.1 * f64::from(k)).collect();
        let worst = |alpha: f64| {
            grid.iter()
                .map(|&x| (c_ratio(alpha, x, &cfg).unwrap() - 1.0).abs())
                .fold(0.0, f64::max)
        };
        let (w50, w500) = (worst(50.0), worst(500.0));
        assert!(w50 <= 10.0 / 50.0, "{w50}");
        assert!(w500 < w50);
        assert!(w500 * 500.0 <= 2.0 * w50 * 50.0);
        assert!(c_ratio(50.0, 1.0, &cfg).is_err());
    }

    #[test]
    fn spike_near_square() {
        let cfg = SolverConfig::default();
        let r = deviation_report(DeviationKind::Lambda, &[90, 100, 110, 150], &[10], &cfg).unwrap();
        let spikes: Vec<u32> = r.rows.iter().filter(|r| r.spike).map(|r| r.n).collect();
        assert_eq!(spikes, vec![100]);
        assert!(r.rows.iter().all(|r| r.scaled_error.is_finite()));
        assert!(r.rows[1].ratio_error.is_none());
    }

    #[test]
    fn geometry_rows_scale_like_one_over_alpha() {
        let cfg = SolverConfig::default();
        let r = deviation_report(DeviationKind::Geometry, &[11, 51, 201], &[], &cfg).unwrap();
        assert_eq!(r.rows.len(), 9);
        assert!(r.max_abs_scaled(Some("W")) < 20.0, "{r:?}");
    }

    #[test]
    fn log_grid() {
        let g = log_spaced(10, 10_000, 40);
        assert_eq!(g.first(), Some(&10));
        assert_eq!(g.last(), Some(&10_000));
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert!(g.len() > 100 && g.len() <= 121);
        assert_eq!(log_spaced(5, 5, 10), vec![5]);
        assert!(log_spaced(0, 5, 10).is_empty());
    }

    #[test]
    fn kinds_parse() {
        for k in [DeviationKind::Lambda, DeviationKind::K0, DeviationKind::LogMi, DeviationKind::Geometry] {
            assert_eq!(k.to_string().parse::<DeviationKind>().unwrap(), k);
        }
        assert!("nope".parse::<DeviationKind>().is_err());
    }
}
