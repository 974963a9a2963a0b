//! Jacobi fields in each spherical-harmonic mode and the Steklov eigenvalues
//! they define.
//!
//! In the `m`-th harmonic mode a Jacobi field `phi` on `[0, W]` solves
//!
//! ```text
//! phi_xx = [m(m + n - 2)(1 + f_x^2) - n(n - 1)] / f^2 * phi
//! ```
//!
//! with `phi(0) = 1, phi_x(0) = 0` (even) or `phi(0) = 0, phi_x(0) = 1`
//! (odd). The Steklov eigenvalue of the mode is `W phi_x(W) / phi(W)`.
//! The profile `(f, f_x)` is integrated in the same system as `phi`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{profile, profile_rhs, solve_geometry, CatenoidGeometry, ProfilePoint};
use crate::kernels::{integrate_ivp, integrate_ivp_observed, SolverConfig};

/// Above this magnitude the linear solve is redone in log-derivative form.
const GROWTH_LIMIT: f64 = 1e100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// 0 for even, 1 for odd.
    pub fn index(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    /// `(phi(0), phi_x(0))`.
    pub fn initial_data(self) -> (f64, f64) {
        match self {
            Parity::Even => (1.0, 0.0),
            Parity::Odd => (0.0, 1.0),
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

impl FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "even" | "0" => Ok(Parity::Even),
            "odd" | "1" => Ok(Parity::Odd),
            other => Err(Error::InvalidArgument(format!("unknown parity '{other}'"))),
        }
    }
}

/// Which formulation produced a [`ModeSolution`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModePath {
    /// `(f, f_x, phi, phi_x)` as a linear second-order system.
    Linear,
    /// `(f, f_x, u = phi_x / phi, ln phi)`.
    Riccati,
}

/// Terminal data of one Jacobi-mode initial value problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeSolution {
    pub n: u32,
    pub m: u32,
    pub parity: Parity,
    /// `phi(W)`; may be `+inf` when only the Riccati path could run.
    pub phi_w: f64,
    /// `phi_x(W)`; may be infinite for the same reason.
    pub phi_x_w: f64,
    /// `phi_x(W) / phi(W)`, always finite unless `phi(W) = 0`.
    pub log_derivative_w: f64,
    /// Smallest `phi` seen on accepted steps in `(0, W]`.
    pub min_phi: f64,
    pub path: ModePath,
}

/// A Steklov eigenvalue `Lambda_i(n, m)`; `-inf` for the even zero mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SteklovEigenvalue {
    pub n: u32,
    pub m: u32,
    pub parity: Parity,
    pub lambda: f64,
}

fn mode_coefficients(n: u32, m: u32) -> (f64, f64) {
    let (n, m) = (f64::from(n), f64::from(m));
    (m * (m + n - 2.0), n * (n - 1.0))
}

/// Right-hand side of the coupled `(f, f_x, phi, phi_x)` system.
fn linear_rhs(n: u32, m: u32) -> impl Fn(f64, &[f64; 4]) -> [f64; 4] {
    let profile = profile_rhs(crate::geometry::alpha_of(n));
    let (angular, curvature) = mode_coefficients(n, m);
    move |x, y| {
        let [df, dfx] = profile(x, &[y[0], y[1]]);
        let q = (angular * y[1].mul_add(y[1], 1.0) - curvature) / (y[0] * y[0]);
        [df, dfx, y[3], q * y[2]]
    }
}

/// Right-hand side of `(f, f_x, u, ln phi)` with `u' = q - u^2`.
fn riccati_rhs(n: u32, m: u32) -> impl Fn(f64, &[f64; 4]) -> [f64; 4] {
    let profile = profile_rhs(crate::geometry::alpha_of(n));
    let (angular, curvature) = mode_coefficients(n, m);
    move |x, y| {
        let [df, dfx] = profile(x, &[y[0], y[1]]);
        let q = (angular * y[1].mul_add(y[1], 1.0) - curvature) / (y[0] * y[0]);
        [df, dfx, q - y[2] * y[2], y[2]]
    }
}

/// Solve the `(n, m, parity)` Jacobi-mode IVP on `[0, W]`.
pub fn jacobi_mode_solution(
    n: u32,
    m: u32,
    parity: Parity,
    config: &SolverConfig,
) -> Result<ModeSolution> {
    let geometry = solve_geometry(n, config)?;
    jacobi_mode_solution_on(&geometry, m, parity, config)
}

/// Same as [`jacobi_mode_solution`] with the geometry already solved.
pub fn jacobi_mode_solution_on(
    geometry: &CatenoidGeometry,
    m: u32,
    parity: Parity,
    config: &SolverConfig,
) -> Result<ModeSolution> {
    match linear_solution(geometry, m, parity, config) {
        Ok(sol) if sol.phi_w.abs() <= GROWTH_LIMIT && sol.phi_x_w.abs() <= GROWTH_LIMIT => Ok(sol),
        Ok(_) | Err(Error::Integration { .. }) => riccati_solution(geometry, m, parity, config),
        Err(e) => Err(e),
    }
}

/// The linear path only, without the growth fallback.
pub fn linear_solution(
    geometry: &CatenoidGeometry,
    m: u32,
    parity: Parity,
    config: &SolverConfig,
) -> Result<ModeSolution> {
    let n = geometry.n;
    let (phi0, dphi0) = parity.initial_data();
    let mut min_phi = f64::INFINITY;
    let end = integrate_ivp_observed(
        linear_rhs(n, m),
        [1.0, 0.0, phi0, dphi0],
        (0.0, geometry.w),
        config,
        |_, y| min_phi = min_phi.min(y[2]),
    )?;
    Ok(ModeSolution {
        n,
        m,
        parity,
        phi_w: end[2],
        phi_x_w: end[3],
        log_derivative_w: end[3] / end[2],
        min_phi,
        path: ModePath::Linear,
    })
}

/// The log-derivative path; immune to overflow of `phi`.
///
/// The even zero mode vanishes at `W`, so its log-derivative diverges there
/// and this path cannot represent it.
pub fn riccati_solution(
    geometry: &CatenoidGeometry,
    m: u32,
    parity: Parity,
    config: &SolverConfig,
) -> Result<ModeSolution> {
    let n = geometry.n;
    let (start, y0) = match parity {
        Parity::Even => (0.0, [1.0, 0.0, 0.0, 0.0]),
        Parity::Odd => {
            // phi = x + q0 x^3 / 6 + O(x^5) near the neck, q0 = q(0).
            let eps = geometry.w * 1e-4;
            let [f, f_x] = integrate_ivp(
                profile_rhs(geometry.alpha),
                [1.0, 0.0],
                (0.0, eps),
                config,
            )?;
            let (angular, curvature) = mode_coefficients(n, m);
            let q0 = angular - curvature;
            let phi = eps + q0 * eps.powi(3) / 6.0;
            let dphi = 1.0 + q0 * eps * eps / 2.0;
            (eps, [f, f_x, dphi / phi, phi.ln()])
        }
    };
    let mut min_log_phi = f64::INFINITY;
    let end = integrate_ivp_observed(
        riccati_rhs(n, m),
        y0,
        (start, geometry.w),
        config,
        |_, y| min_log_phi = min_log_phi.min(y[3]),
    )?;
    let phi_w = end[3].exp();
    Ok(ModeSolution {
        n,
        m,
        parity,
        phi_w,
        phi_x_w: end[2] * phi_w,
        log_derivative_w: end[2],
        min_phi: min_log_phi.exp(),
        path: ModePath::Riccati,
    })
}

/// Steklov eigenvalue `Lambda_i(n, m) = W phi_x(W) / phi(W)`.
pub fn steklov(n: u32, m: u32, parity: Parity, config: &SolverConfig) -> Result<SteklovEigenvalue> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("dimension must be >= 2, got {n}")));
    }
    if m == 0 && parity == Parity::Even {
        return Ok(SteklovEigenvalue {
            n,
            m,
            parity,
            lambda: f64::NEG_INFINITY,
        });
    }
    let geometry = solve_geometry(n, config)?;
    steklov_on(&geometry, m, parity, config)
}

/// Steklov eigenvalue with the geometry already solved.
pub fn steklov_on(
    geometry: &CatenoidGeometry,
    m: u32,
    parity: Parity,
    config: &SolverConfig,
) -> Result<SteklovEigenvalue> {
    let n = geometry.n;
    if m == 0 && parity == Parity::Even {
        return Ok(SteklovEigenvalue {
            n,
            m,
            parity,
            lambda: f64::NEG_INFINITY,
        });
    }
    let sol = jacobi_mode_solution_on(geometry, m, parity, config)?;
    // Every mode other than the even zero mode is positive on (0, W].
    if !(sol.phi_w > 0.0) || !sol.log_derivative_w.is_finite() {
        return Err(Error::DegenerateMode {
            n,
            m,
            phi_w: sol.phi_w,
        });
    }
    Ok(SteklovEigenvalue {
        n,
        m,
        parity,
        lambda: geometry.w * sol.log_derivative_w,
    })
}

/// Mode state `(f, f_x, phi, phi_x)` at each of the sorted points `xs`
/// (all in `[0, W]`), by chaining integrations between consecutive points.
pub fn jacobi_mode_on_grid(
    geometry: &CatenoidGeometry,
    m: u32,
    parity: Parity,
    xs: &[f64],
    config: &SolverConfig,
) -> Result<Vec<[f64; 4]>> {
    let rhs = linear_rhs(geometry.n, m);
    let (phi0, dphi0) = parity.initial_data();
    let mut state = [1.0, 0.0, phi0, dphi0];
    let mut at = 0.0;
    let mut out = Vec::with_capacity(xs.len());
    for &x in xs {
        if x < at || x > geometry.w * (1.0 + 1e-12) {
            return Err(Error::InvalidArgument(format!(
                "grid points must be sorted within [0, W], got {x}"
            )));
        }
        state = integrate_ivp(&rhs, state, (at, x), config)?;
        at = x;
        out.push(state);
    }
    Ok(out)
}

/// The explicitly known Jacobi fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosedFormTag {
    /// Even, mode 0: `-x f_x f^(1-n) + f^(2-n)` (dilations).
    Even0,
    /// Odd, mode 0: `f_x f^(1-n) / (n-1)` (vertical translations).
    Odd0,
    /// Even, mode 1: `f^(1-n)` (horizontal translations).
    Even1,
    /// Odd, mode 1: `(f_x f^(2-n) + x f^(1-n)) / n` (rotations).
    Odd1,
    /// Even, mode `n-1`: `((n-2) f^(n-1) + f^(1-n)) / (n-1)`.
    EvenNm1,
    /// Even, mode `n`: `f^n`.
    EvenN,
    /// Odd, mode `2n-2`: `(3n-4) f_x f^(n-1) + f_x f^(1-n)`.
    Odd2nm2,
    /// Odd, mode `2n-1`: `f_x f^n`.
    Odd2nm1,
}

impl ClosedFormTag {
    pub const ALL: [ClosedFormTag; 8] = [
        ClosedFormTag::Even0,
        ClosedFormTag::Odd0,
        ClosedFormTag::Even1,
        ClosedFormTag::Odd1,
        ClosedFormTag::EvenNm1,
        ClosedFormTag::EvenN,
        ClosedFormTag::Odd2nm2,
        ClosedFormTag::Odd2nm1,
    ];

    pub fn mode(self, n: u32) -> u32 {
        match self {
            ClosedFormTag::Even0 | ClosedFormTag::Odd0 => 0,
            ClosedFormTag::Even1 | ClosedFormTag::Odd1 => 1,
            ClosedFormTag::EvenNm1 => n - 1,
            ClosedFormTag::EvenN => n,
            ClosedFormTag::Odd2nm2 => 2 * n - 2,
            ClosedFormTag::Odd2nm1 => 2 * n - 1,
        }
    }

    pub fn parity(self) -> Parity {
        match self {
            ClosedFormTag::Even0
            | ClosedFormTag::Even1
            | ClosedFormTag::EvenNm1
            | ClosedFormTag::EvenN => Parity::Even,
            _ => Parity::Odd,
        }
    }

    /// `phi(0)` for even tags, `phi_x(0)` for odd ones. Dividing the closed
    /// form by this gives the field with the IVP normalisation.
    pub fn normalization(self, n: u32) -> f64 {
        let nf = f64::from(n);
        match self {
            ClosedFormTag::Odd2nm2 => 3.0 * (nf - 1.0) * (nf - 1.0),
            ClosedFormTag::Odd2nm1 => nf - 1.0,
            _ => 1.0,
        }
    }

    /// Evaluate the field at a profile point.
    pub fn eval(self, n: u32, p: &ProfilePoint) -> f64 {
        let nf = f64::from(n);
        let k = n as i32;
        let (x, f, fx) = (p.x, p.f, p.f_x);
        match self {
            ClosedFormTag::Even0 => -x * fx * f.powi(1 - k) + f.powi(2 - k),
            ClosedFormTag::Odd0 => fx * f.powi(1 - k) / (nf - 1.0),
            ClosedFormTag::Even1 => f.powi(1 - k),
            ClosedFormTag::Odd1 => (fx * f.powi(2 - k) + x * f.powi(1 - k)) / nf,
            ClosedFormTag::EvenNm1 => {
                ((nf - 2.0) * f.powi(k - 1) + f.powi(1 - k)) / (nf - 1.0)
            }
            ClosedFormTag::EvenN => f.powi(k),
            ClosedFormTag::Odd2nm2 => (3.0 * nf - 4.0) * fx * f.powi(k - 1) + fx * f.powi(1 - k),
            ClosedFormTag::Odd2nm1 => fx * f.powi(k),
        }
    }
}

impl fmt::Display for ClosedFormTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClosedFormTag::Even0 => "even0",
            ClosedFormTag::Odd0 => "odd0",
            ClosedFormTag::Even1 => "even1",
            ClosedFormTag::Odd1 => "odd1",
            ClosedFormTag::EvenNm1 => "even_nm1",
            ClosedFormTag::EvenN => "even_n",
            ClosedFormTag::Odd2nm2 => "odd_2nm2",
            ClosedFormTag::Odd2nm1 => "odd_2nm1",
        })
    }
}

impl FromStr for ClosedFormTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClosedFormTag::ALL
            .into_iter()
            .find(|t| t.to_string() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown closed-form tag '{s}'")))
    }
}

/// Closed-form Jacobi field `tag` of the `n`-dimensional catenoid at `x`.
pub fn closed_form_field(n: u32, tag: ClosedFormTag, x: f64, config: &SolverConfig) -> Result<f64> {
    let p = profile(n, x, config)?;
    Ok(tag.eval(n, &p))
}

/// Integrated mode against the closed form `tag` at `points` equally spaced
/// nodes `W k / points`, `k = 1..=points`.
///
/// Returns `max |phi_ode - phi_closed| / max |phi_closed|`. The closed form
/// is evaluated on an independently integrated profile and divided by
/// [`ClosedFormTag::normalization`]. A sup-norm scale is used because some
/// fields (the even zero mode) vanish at `W`.
pub fn closed_form_deviation(n: u32, tag: ClosedFormTag, points: usize, config: &SolverConfig) -> Result<f64> {
    if points == 0 {
        return Err(Error::InvalidArgument("need at least one grid point".into()));
    }
    let geometry = solve_geometry(n, config)?;
    let xs: Vec<f64> = (1..=points)
        .map(|k| geometry.w * k as f64 / points as f64)
        .collect();
    let states = jacobi_mode_on_grid(&geometry, tag.mode(n), tag.parity(), &xs, config)?;
    let scale = tag.normalization(n);
    let mut worst = 0.0f64;
    let mut size = 0.0f64;
    for (x, s) in xs.iter().zip(&states) {
        let exact = closed_form_field(n, tag, *x, config)? / scale;
        worst = worst.max((s[2] - exact).abs());
        size = size.max(exact.abs());
    }
    Ok(worst / size)
}
