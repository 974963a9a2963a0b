//! Steklov and Morse index of the critical catenoid.
//!
//! Even modes are counted by scanning `m = 1, 2, ...` until the first
//! eigenvalue `>= 1` (eigenvalues increase with `m`, and `Lambda_0(n, n) = n`
//! stops the scan by `m = n`). The even zero mode contributes by convention
//! and exactly one odd mode (`m = 0`) lies below 1. Each mode is weighted by
//! the dimension of the degree-`m` harmonics on `S^(n-1)`, and the Morse
//! index is the Steklov index plus one.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::geometry::{solve_geometry, CatenoidGeometry};
use crate::kernels::{binomial_exact, ln_biguint, log_binomial, SolverConfig};
use crate::spectrum::{steklov_on, Parity};

/// An index is certified only if the margin to 1 exceeds this multiple of
/// the estimated eigenvalue error.
pub const CERTIFICATION_FACTOR: f64 = 1e3;

/// Exact Morse indices are produced up to this dimension; beyond it only
/// the logarithm is reported.
pub const EXACT_INDEX_LIMIT: u32 = 5000;

/// Dimension of the degree-`m` spherical harmonics on `S^(n-1)`:
/// `C(n+m-1, n-1) - C(n+m-3, n-1)`.
pub fn harmonic_dim(n: u32, m: u32) -> BigUint {
    let (n, m) = (i64::from(n), i64::from(m));
    binomial_exact(n + m - 1, n - 1) - binomial_exact(n + m - 3, n - 1)
}

/// `sum_{m < k} dim H(n, m)`, the Steklov index when `K_0(n) = k`.
pub fn steklov_index_from_count(n: u32, k0: u32) -> BigUint {
    (0..k0).map(|m| harmonic_dim(n, m)).sum()
}

/// `1 + C(n+k-2, k-1) + C(n+k-3, k-2)`, the telescoped Morse index.
pub fn morse_index_closed_form(n: u32, k0: u32) -> BigUint {
    let (n, k) = (i64::from(n), i64::from(k0));
    BigUint::one() + binomial_exact(n + k - 2, k - 1) + binomial_exact(n + k - 3, k - 2)
}

/// Natural log of [`morse_index_closed_form`], computed in the log domain.
pub fn log_morse_index_closed_form(n: u32, k0: u32) -> f64 {
    let (n, k) = (i64::from(n), i64::from(k0));
    let terms = [0.0, log_binomial(n + k - 2, k - 1), log_binomial(n + k - 3, k - 2)];
    let top = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    top + terms.iter().map(|t| (t - top).exp()).sum::<f64>().ln()
}

/// Outcome of the even-mode scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvenModeCount {
    pub n: u32,
    /// Number of even modes with `Lambda < 1`, the zero mode included.
    pub k0: u32,
    /// `(m, Lambda_0(n, m))` for the largest mode below 1.
    pub last_below: (u32, f64),
    /// `(m, Lambda_0(n, m))` for the smallest mode at or above 1.
    pub first_above: (u32, f64),
    /// `min(1 - last_below, first_above - 1)`.
    pub margin: f64,
}

pub fn count_even_modes(n: u32, config: &SolverConfig) -> Result<EvenModeCount> {
    let geometry = solve_geometry(n, config)?;
    count_even_modes_on(&geometry, config)
}

pub fn count_even_modes_on(geometry: &CatenoidGeometry, config: &SolverConfig) -> Result<EvenModeCount> {
    let n = geometry.n;
    let mut last_below = (0, f64::NEG_INFINITY);
    for m in 1..=n {
        let lambda = steklov_on(geometry, m, Parity::Even, config)?.lambda;
        if lambda >= 1.0 {
            let margin = (1.0 - last_below.1).min(lambda - 1.0);
            return Ok(EvenModeCount {
                n,
                k0: m,
                last_below,
                first_above: (m, lambda),
                margin,
            });
        }
        last_below = (m, lambda);
    }
    // Lambda_0(n, n) = n >= 1, so reaching here means the solver is off.
    Err(Error::DegenerateMode {
        n,
        m: n,
        phi_w: f64::NAN,
    })
}

/// Index data for one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexReport {
    pub n: u32,
    pub k0: u32,
    pub k1: u32,
    pub steklov_index: BigUint,
    /// `None` above [`EXACT_INDEX_LIMIT`].
    pub morse_index: Option<BigUint>,
    pub log_morse_index: f64,
    pub last_below: (u32, f64),
    pub first_above: (u32, f64),
    pub margin: f64,
    /// Largest change of the two boundary eigenvalues under halved
    /// tolerances.
    pub error_estimate: f64,
    pub certified: bool,
}

/// Full index computation, certification included.
///
/// The boundary eigenvalues are recomputed with every tolerance halved; the
/// change is the error estimate, and the row is certified when the margin to
/// 1 exceeds [`CERTIFICATION_FACTOR`] times that estimate.
pub fn index_report(n: u32, config: &SolverConfig) -> Result<IndexReport> {
    let geometry = solve_geometry(n, config)?;
    let count = count_even_modes_on(&geometry, config)?;

    let refined = config.halved();
    let refined_geometry = solve_geometry(n, &refined)?;
    let mut error_estimate = 0.0f64;
    for (m, lambda) in [count.last_below, count.first_above] {
        let again = steklov_on(&refined_geometry, m, Parity::Even, &refined)?.lambda;
        let floor = f64::EPSILON * lambda.abs().max(1.0);
        error_estimate = error_estimate.max((again - lambda).abs()).max(floor);
    }
    let certified = count.margin > CERTIFICATION_FACTOR * error_estimate;

    let k0 = count.k0;
    let (steklov_index, morse_index, log_morse_index) = if n <= EXACT_INDEX_LIMIT {
        let si = steklov_index_from_count(n, k0);
        let mi = &si + BigUint::one();
        let closed = morse_index_closed_form(n, k0);
        if mi != closed {
            return Err(Error::IndexMismatch {
                n,
                via_steklov: mi.to_string(),
                closed_form: closed.to_string(),
            });
        }
        let log = ln_biguint(&mi);
        (si, Some(mi), log)
    } else {
        let si = steklov_index_from_count(n, k0);
        (si, None, log_morse_index_closed_form(n, k0))
    };

    Ok(IndexReport {
        n,
        k0,
        k1: 1,
        steklov_index,
        morse_index,
        log_morse_index,
        last_below: count.last_below,
        first_above: count.first_above,
        margin: count.margin,
        error_estimate,
        certified,
    })
}

fn certified(report: IndexReport) -> Result<IndexReport> {
    if report.certified {
        Ok(report)
    } else {
        Err(Error::Uncertified {
            n: report.n,
            margin: report.margin,
            error_estimate: report.error_estimate,
        })
    }
}

/// Certified Steklov index `SI(n)`.
pub fn steklov_index(n: u32, config: &SolverConfig) -> Result<BigUint> {
    certified(index_report(n, config)?).map(|r| r.steklov_index)
}

/// Certified Morse index `MI(n) = SI(n) + 1`, cross-checked against the
/// closed form. Only for `n <=` [`EXACT_INDEX_LIMIT`].
pub fn morse_index(n: u32, config: &SolverConfig) -> Result<BigUint> {
    if n > EXACT_INDEX_LIMIT {
        return Err(Error::InvalidArgument(format!(
            "exact Morse index is limited to n <= {EXACT_INDEX_LIMIT}; use log_morse_index"
        )));
    }
    let report = certified(index_report(n, config)?)?;
    Ok(report.morse_index.expect("exact below the limit"))
}

/// Natural log of the certified Morse index, for any `n`.
pub fn log_morse_index(n: u32, config: &SolverConfig) -> Result<f64> {
    certified(index_report(n, config)?).map(|r| r.log_morse_index)
}

/// `(Lambda_1(n, 0), Lambda_1(n, 1))`. The first is below 1 and the second
/// equals 1, which together with monotonicity pins `K_1(n) = 1`.
pub fn odd_mode_diagnostic(n: u32, config: &SolverConfig) -> Result<(f64, f64)> {
    let geometry = solve_geometry(n, config)?;
    Ok((
        steklov_on(&geometry, 0, Parity::Odd, config)?.lambda,
        steklov_on(&geometry, 1, Parity::Odd, config)?.lambda,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    #[test]
    fn harmonic_dimensions() {
        for m in 1..10 {
            assert_eq!(harmonic_dim(2, m), BigUint::from(2u32));
        }
        assert_eq!(harmonic_dim(3, 2), BigUint::from(5u32));
        assert_eq!(harmonic_dim(3, 7), BigUint::from(15u32));
        for n in 2..12 {
            assert_eq!(harmonic_dim(n, 0), BigUint::one());
            assert_eq!(harmonic_dim(n, 1), BigUint::from(n));
        }
        // S^3: (m + 1)^2
        assert_eq!(harmonic_dim(4, 5), BigUint::from(36u32));
    }

    #[test]
    fn telescoping_identity() {
        for n in 2..=50 {
            for k in 1..=12 {
                assert_eq!(
                    steklov_index_from_count(n, k) + BigUint::one(),
                    morse_index_closed_form(n, k),
                    "n = {n}, k = {k}"
                );
            }
        }
    }

    #[test]
    fn log_closed_form_matches_exact() {
        for &(n, k) in &[(2u32, 2u32), (12, 4), (100, 9), (4000, 60)] {
            let exact = ln_biguint(&morse_index_closed_form(n, k));
            let log = log_morse_index_closed_form(n, k);
            assert!((exact - log).abs() < 1e-10 * exact.max(1.0), "{n}: {exact} {log}");
        }
    }

    #[test]
    fn catenoid_in_three_space_has_index_four() {
        let r = index_report(2, &cfg()).unwrap();
        assert_eq!(r.k0, 2);
        assert_eq!(r.steklov_index, BigUint::from(3u32));
        assert_eq!(r.morse_index, Some(BigUint::from(4u32)));
        assert!(r.certified);
        assert!((r.log_morse_index - 4f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn small_dimension_indices() {
        assert_eq!(morse_index(5, &cfg()).unwrap(), BigUint::from(21u32));
        assert_eq!(steklov_index(5, &cfg()).unwrap(), BigUint::from(20u32));
        assert_eq!(morse_index(12, &cfg()).unwrap(), BigUint::from(443u32));
        assert_eq!(steklov_index(12, &cfg()).unwrap(), BigUint::from(442u32));
    }

    #[test]
    fn sentinel_dimension_is_certified() {
        let r = index_report(91, &cfg()).unwrap();
        assert_eq!(r.k0, 9);
        assert_eq!(r.last_below.0, 8);
        assert!((r.last_below.1 - 0.99545).abs() < 1e-5);
        assert!((r.margin - 4.55e-3).abs() < 1e-5);
        assert!(r.certified, "{r:?}");
    }

    #[test]
    fn odd_modes() {
        for n in [2, 6, 15] {
            let (l0, l1) = odd_mode_diagnostic(n, &cfg()).unwrap();
            assert!(l0 < 1.0);
            assert!((l1 - 1.0).abs() < 1e-8, "n = {n}: {l1}");
        }
    }

    #[test]
    fn uncertified_rows_are_refused() {
        let mut r = index_report(12, &cfg()).unwrap();
        assert!(certified(r.clone()).is_ok());
        r.error_estimate = r.margin;
        r.certified = r.margin > CERTIFICATION_FACTOR * r.error_estimate;
        assert!(matches!(certified(r), Err(Error::Uncertified { n: 12, .. })));
        assert!(morse_index(EXACT_INDEX_LIMIT + 1, &cfg()).is_err());
    }

    #[test]
    fn loose_tolerances_are_caught_by_the_route_check() {
        let loose = SolverConfig {
            rel_tol: 1e-3,
            abs_tol: 1e-3,
            ..SolverConfig::default()
        };
        assert!(matches!(index_report(91, &loose), Err(Error::RouteDisagreement { .. })));
    }
}
