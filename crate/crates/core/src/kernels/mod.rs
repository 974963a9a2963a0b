//! Generic numerical primitives: adaptive Runge-Kutta integration, Brent
//! root bracketing, tanh-sinh quadrature and a few special functions.
//!
//! Nothing in here knows about catenoids.

mod ode;
mod quad;
mod root;
mod special;

pub use ode::{integrate_ivp, integrate_ivp_observed};
pub use quad::{quad_tanh_sinh, quad_tanh_sinh_offsets};
pub use root::{find_root, Bracket};
pub use special::{beta, binomial_exact, ln_biguint, log_beta, log_binomial, log_gamma};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerances shared by every solver in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Relative local error tolerance of the ODE integrator.
    pub rel_tol: f64,
    /// Absolute local error tolerance of the ODE integrator.
    pub abs_tol: f64,
    /// Maximum number of attempted integrator steps per call.
    pub max_steps: usize,
    /// First trial step; `None` picks one from the initial derivative.
    pub initial_step: Option<f64>,
    /// Relative tolerance for successive tanh-sinh levels.
    pub quad_tol: f64,
    /// Bracket width at which Brent's method stops.
    pub root_tol: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            abs_tol: 1e-14,
            max_steps: 200_000,
            initial_step: None,
            quad_tol: 1e-13,
            root_tol: 1e-13,
        }
    }
}

impl SolverConfig {
    /// Default configuration with the ODE relative tolerance replaced.
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            ..Self::default()
        }
    }

    /// Every tolerance halved; used for refinement-based error estimates.
    pub fn halved(&self) -> Self {
        Self {
            rel_tol: self.rel_tol * 0.5,
            abs_tol: self.abs_tol * 0.5,
            max_steps: self.max_steps.saturating_mul(2),
            initial_step: self.initial_step.map(|h| h * 0.5),
            quad_tol: self.quad_tol * 0.5,
            root_tol: self.root_tol * 0.5,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(self.rel_tol) || !positive(self.abs_tol) {
            return Err(Error::InvalidArgument(format!(
                "ODE tolerances must be positive (rel_tol = {}, abs_tol = {})",
                self.rel_tol, self.abs_tol
            )));
        }
        if !positive(self.quad_tol) || !positive(self.root_tol) {
            return Err(Error::InvalidArgument(format!(
                "quadrature/root tolerances must be positive (quad_tol = {}, root_tol = {})",
                self.quad_tol, self.root_tol
            )));
        }
        if self.max_steps == 0 {
            return Err(Error::InvalidArgument("max_steps must be at least 1".into()));
        }
        if let Some(h) = self.initial_step {
            if !positive(h) {
                return Err(Error::InvalidArgument(format!(
                    "initial_step must be positive, got {h}"
                )));
            }
        }
        Ok(())
    }
}
