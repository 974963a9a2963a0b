//! Profile curve and free-boundary parameters of the critical catenoid.
//!
//! The profile `f` of the `n`-dimensional catenoid solves
//! `f_x = sqrt(f^alpha - 1)`, `f(0) = 1`, with `alpha = 2(n - 1)`. It lives
//! on a maximal interval `]-L, L[` (`L = +inf` only for `alpha = 2`), and the
//! free-boundary point `W` is the unique `x > 0` with `W f_x(W) = f(W)`.
//! `H = f(W)` and `R = sqrt(W^2 + H^2)`.
//!
//! Everything is available for real `alpha >= 2`; the `n`-indexed entry
//! points are thin wrappers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::{
    find_root, integrate_ivp, log_beta, quad_tanh_sinh_offsets, Bracket, SolverConfig,
};

/// Absolute tolerance at which the two `W` routes must agree.
pub const ROUTE_AGREEMENT: f64 = 1e-8;

/// `alpha = 2(n - 1)` for the `n`-dimensional catenoid.
pub fn alpha_of(n: u32) -> f64 {
    2.0 * (f64::from(n) - 1.0)
}

fn check_dimension(n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("dimension must be >= 2, got {n}")));
    }
    Ok(())
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha >= 2.0) || !alpha.is_finite() {
        return Err(Error::InvalidArgument(format!("alpha must be >= 2, got {alpha}")));
    }
    Ok(())
}

/// A point `(x, f(x), f_x(x))` on the profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfilePoint {
    pub x: f64,
    pub f: f64,
    pub f_x: f64,
}

impl ProfilePoint {
    /// `ln(1 + f_x^2) - alpha ln f`, which vanishes on the exact profile.
    ///
    /// This is the first integral `f_x^2 = f^alpha - 1` in relative form, so
    /// it stays meaningful when `f^alpha` is huge.
    pub fn first_integral_residual(&self, alpha: f64) -> f64 {
        self.f_x.mul_add(self.f_x, 1.0).ln() - alpha * self.f.ln()
    }
}

/// Right-hand side `(f, f_x)' = (f_x, (alpha/2)(1 + f_x^2)/f)`.
pub(crate) fn profile_rhs(alpha: f64) -> impl Fn(f64, &[f64; 2]) -> [f64; 2] {
    let c = 0.5 * alpha;
    move |_, y| [y[1], c * y[1].mul_add(y[1], 1.0) / y[0]]
}

/// Profile of the `n`-dimensional catenoid at `x >= 0`.
pub fn profile(n: u32, x: f64, config: &SolverConfig) -> Result<ProfilePoint> {
    check_dimension(n)?;
    profile_alpha(alpha_of(n), x, config)
}

/// Profile for real `alpha >= 2` at `x >= 0`.
pub fn profile_alpha(alpha: f64, x: f64, config: &SolverConfig) -> Result<ProfilePoint> {
    check_alpha(alpha)?;
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::InvalidArgument(format!("profile needs finite x >= 0, got {x}")));
    }
    let l = half_length(alpha)?;
    if x >= l {
        return Err(Error::InvalidArgument(format!(
            "x = {x} is outside the maximal interval (L = {l})"
        )));
    }
    let [f, f_x] = integrate_ivp(profile_rhs(alpha), [1.0, 0.0], (0.0, x), config)?;
    Ok(ProfilePoint { x, f, f_x })
}

/// Inverse of the profile, `g(y) = int_1^y (s^alpha - 1)^(-1/2) ds`.
pub fn inverse_profile(n: u32, y: f64, tol: f64) -> Result<f64> {
    check_dimension(n)?;
    inverse_profile_alpha(alpha_of(n), y, tol)
}

pub fn inverse_profile_alpha(alpha: f64, y: f64, tol: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if !(y >= 1.0) || !y.is_finite() {
        return Err(Error::InvalidArgument(format!("inverse profile needs y >= 1, got {y}")));
    }
    inverse_profile_offset(alpha, y - 1.0, tol)
}

/// `g(1 + d)`, parametrised by the offset so that tiny `d` stays exact.
fn inverse_profile_offset(alpha: f64, d: f64, tol: f64) -> Result<f64> {
    if d == 0.0 {
        return Ok(0.0);
    }
    // Integrate in u = s - 1 over [0, d]: s^alpha - 1 = expm1(alpha ln(1 + u)).
    quad_tanh_sinh_offsets(
        |_, u, _| 1.0 / (alpha * u.ln_1p()).exp_m1().sqrt(),
        0.0,
        d,
        tol,
    )
}

/// `ln(e^z - 1)` for `z > 0` without overflow.
fn ln_expm1(z: f64) -> f64 {
    if z > 30.0 {
        z + (-(-z).exp()).ln_1p()
    } else {
        z.exp_m1().ln()
    }
}

/// Half-length `L_alpha = (1/alpha) B(1/2 - 1/alpha, 1/2)` of the maximal
/// interval; `+inf` for `alpha = 2`.
pub fn half_length(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if alpha == 2.0 {
        return Ok(f64::INFINITY);
    }
    Ok(log_beta(0.5 - 1.0 / alpha, 0.5)?.exp() / alpha)
}

/// Solved free-boundary scalars for a profile with exponent `alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileGeometry {
    pub alpha: f64,
    /// Half-length of the maximal interval (`+inf` at `alpha = 2`).
    pub l: f64,
    pub w: f64,
    pub h: f64,
    pub r: f64,
}

/// Free-boundary scalars of the `n`-dimensional critical catenoid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CatenoidGeometry {
    pub n: u32,
    pub alpha: f64,
    pub l: f64,
    pub w: f64,
    pub h: f64,
    pub r: f64,
}

impl CatenoidGeometry {
    fn from_profile(n: u32, g: ProfileGeometry) -> Self {
        Self {
            n,
            alpha: g.alpha,
            l: g.l,
            w: g.w,
            h: g.h,
            r: g.r,
        }
    }

    /// `W f_x(W) / H - 1`, re-evaluated through the profile ODE.
    pub fn free_boundary_residual(&self, config: &SolverConfig) -> Result<f64> {
        let p = profile_alpha(self.alpha, self.w, config)?;
        Ok(self.w * p.f_x / self.h - 1.0)
    }
}

/// Geometry of the `n`-dimensional catenoid: the quadrature route gives the
/// reported values and the ODE route must agree with it.
pub fn solve_geometry(n: u32, config: &SolverConfig) -> Result<CatenoidGeometry> {
    check_dimension(n)?;
    let alpha = alpha_of(n);
    let primary = solve_height_route(alpha, config)?;
    let check = solve_abscissa_route(alpha, config)?;
    let difference = (primary.w - check.w).abs();
    if !(difference <= ROUTE_AGREEMENT) {
        return Err(Error::RouteDisagreement { n, difference });
    }
    Ok(CatenoidGeometry::from_profile(n, primary))
}

/// Geometry for real `alpha`, via the quadrature route only.
pub fn solve_geometry_alpha(alpha: f64, config: &SolverConfig) -> Result<ProfileGeometry> {
    solve_height_route(alpha, config)
}

/// H is the root of `y -> g(y) sqrt(y^alpha - 1) / y - 1`; then `W = g(H)`.
///
/// The root is sought in `d = y - 1` and in log form,
/// `ln g + (1/2) ln(y^alpha - 1) - ln y`, which has the same sign and no
/// overflow for large `alpha`.
pub fn solve_height_route(alpha: f64, config: &SolverConfig) -> Result<ProfileGeometry> {
    check_alpha(alpha)?;
    config.validate()?;
    let tol = config.quad_tol;
    let objective = |d: f64| -> f64 {
        match inverse_profile_offset(alpha, d, tol) {
            Ok(g) => {
                let log_y = d.ln_1p();
                g.ln() + 0.5 * ln_expm1(alpha * log_y) - log_y
            }
            Err(_) => f64::NAN,
        }
    };

    let lo = 1e-9;
    let mut hi = 1.0;
    let mut f_hi = objective(hi);
    let mut doublings = 0;
    while !(f_hi > 0.0) {
        if f_hi.is_nan() || doublings > 60 {
            return Err(Error::Bracketing {
                what: "the boundary height H",
            });
        }
        hi *= 2.0;
        f_hi = objective(hi);
        doublings += 1;
    }
    let d = find_root(objective, Bracket::new(lo, hi)?, config.root_tol)?;
    let h = 1.0 + d;
    let w = inverse_profile_offset(alpha, d, tol)?;
    Ok(ProfileGeometry {
        alpha,
        l: half_length(alpha)?,
        w,
        h,
        r: w.hypot(h),
    })
}

/// W is the root of `x -> x f_x(x) / f(x) - 1` with `f` from the profile
/// ODE; then `H = f(W)`.
pub fn solve_abscissa_route(alpha: f64, config: &SolverConfig) -> Result<ProfileGeometry> {
    check_alpha(alpha)?;
    config.validate()?;
    let l = half_length(alpha)?;
    let rhs = profile_rhs(alpha);
    let state = |x: f64| integrate_ivp(&rhs, [1.0, 0.0], (0.0, x), config);
    let objective = |x: f64| -> f64 {
        match state(x) {
            Ok([f, f_x]) => x * f_x / f - 1.0,
            Err(_) => f64::NAN,
        }
    };

    // -1 near 0+, +inf as x -> L-, so the sign change is found by walking up.
    let mut lo = 1e-6;
    let mut hi = if l.is_finite() { 0.5 * l } else { 1.0 };
    let mut found = false;
    for _ in 0..200 {
        let v = objective(hi);
        if v > 0.0 {
            found = true;
            break;
        }
        if v.is_nan() {
            hi = 0.5 * (lo + hi);
            continue;
        }
        lo = hi;
        hi = if l.is_finite() { hi + 0.5 * (l - hi) } else { 2.0 * hi };
    }
    if !found {
        return Err(Error::Bracketing {
            what: "the free-boundary point W",
        });
    }
    let w = find_root(objective, Bracket::new(lo, hi)?, config.root_tol)?;
    let [h, _] = state(w)?;
    Ok(ProfileGeometry {
        alpha,
        l,
        w,
        h,
        r: w.hypot(h),
    })
}
