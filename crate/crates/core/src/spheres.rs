//! Jacobi spectrum of the minimal products `S^p(r) x S^q(s)` in the ball.
//!
//! On the mode `(i, j)`, with spherical harmonics of degree `i` on `S^p`
//! and `j` on `S^q`, the Jacobi operator acts as
//!
//! ```text
//! J(i, j) = ((p + q) / pq) (i q (i + p - 1) + j p (j + q - 1)) - 2(p + q)
//! ```
//!
//! The sign is decided on the integer numerator `pq J`, so no mode is
//! misclassified by rounding.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::harmonic_dim;

/// One `(i, j)` mode with its eigenvalue and multiplicity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SphereProductMode {
    pub p: u32,
    pub q: u32,
    pub i: u32,
    pub j: u32,
    pub eigenvalue: f64,
    /// `pq J(i, j)`, exact.
    pub numerator: i128,
    #[serde(with = "decimal")]
    pub degeneracy: BigUint,
}

impl SphereProductMode {
    pub fn is_negative(&self) -> bool {
        self.numerator < 0
    }
}

mod decimal {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

fn eigenvalue_numerator(p: u32, q: u32, i: u32, j: u32) -> i128 {
    let (p, q, i, j) = (i128::from(p), i128::from(q), i128::from(i), i128::from(j));
    (p + q) * (i * q * (i + p - 1) + j * p * (j + q - 1)) - 2 * (p + q) * p * q
}

pub fn sphere_mode_eigenvalue(p: u32, q: u32, i: u32, j: u32) -> f64 {
    eigenvalue_numerator(p, q, i, j) as f64 / (f64::from(p) * f64::from(q))
}

fn check(p: u32, q: u32) -> Result<()> {
    if p == 0 || q == 0 {
        return Err(Error::InvalidArgument(format!(
            "sphere dimensions must be positive, got p = {p}, q = {q}"
        )));
    }
    Ok(())
}

pub fn sphere_mode(p: u32, q: u32, i: u32, j: u32) -> Result<SphereProductMode> {
    check(p, q)?;
    Ok(SphereProductMode {
        p,
        q,
        i,
        j,
        eigenvalue: sphere_mode_eigenvalue(p, q, i, j),
        numerator: eigenvalue_numerator(p, q, i, j),
        degeneracy: harmonic_dim(p + 1, i) * harmonic_dim(q + 1, j),
    })
}

/// Every mode with `i + j <= max_total`, in order of `(i + j, i)`.
pub fn sphere_modes(p: u32, q: u32, max_total: u32) -> Result<Vec<SphereProductMode>> {
    check(p, q)?;
    (0..=max_total)
        .flat_map(|total| (0..=total).map(move |i| (i, total - i)))
        .map(|(i, j)| sphere_mode(p, q, i, j))
        .collect()
}

/// Scan range used by [`sphere_morse_index`]: `i + j <= 2 max(p, q) + 2`.
pub fn scan_bound(p: u32, q: u32) -> u32 {
    2 * p.max(q) + 2
}

/// Negative modes found by scanning up to [`scan_bound`].
pub fn negative_modes(p: u32, q: u32) -> Result<Vec<SphereProductMode>> {
    Ok(sphere_modes(p, q, scan_bound(p, q))?
        .into_iter()
        .filter(SphereProductMode::is_negative)
        .collect())
}

/// Morse index by enumeration: the degeneracy-weighted count of negative
/// modes.
pub fn sphere_morse_index(p: u32, q: u32) -> Result<BigUint> {
    Ok(negative_modes(p, q)?.into_iter().map(|m| m.degeneracy).sum())
}

/// Number of `i >= 0` with `i^2 + (k - 1) i - 2k < 0`, i.e. the negative
/// modes on the row `j = 0` (with `k = p`) or the column `i = 0` (`k = q`).
fn row_length(k: u32) -> u32 {
    let k = i128::from(k);
    let below = |i: i128| i * i + (k - 1) * i - 2 * k < 0;
    // Positive root: (-(k-1) + sqrt(k^2 + 6k + 1)) / 2, then fix up exactly.
    let disc = ((k * k + 6 * k + 1) as f64).sqrt();
    let mut i = ((disc - (k - 1) as f64) / 2.0).floor().max(0.0) as i128;
    while i > 0 && !below(i - 1) {
        i -= 1;
    }
    while below(i) {
        i += 1;
    }
    i as u32
}

/// Morse index by the second route. Off the axes every mode dominates
/// `(1, 1)`, whose eigenvalue is zero, so only the row `j = 0` and the
/// column `i = 0` can be negative; on them the sign is a quadratic.
pub fn sphere_morse_index_by_rows(p: u32, q: u32) -> Result<BigUint> {
    check(p, q)?;
    let row: BigUint = (0..row_length(p)).map(|i| harmonic_dim(p + 1, i)).sum();
    let column: BigUint = (1..row_length(q)).map(|j| harmonic_dim(q + 1, j)).sum();
    Ok(row + column)
}
