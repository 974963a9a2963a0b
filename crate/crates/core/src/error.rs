use thiserror::Error;

/// Why an ODE integration stopped before reaching the end of its span.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StallKind {
    /// The step budget in `SolverConfig::max_steps` ran out.
    StepBudget,
    /// The step size shrank below what floating point can resolve.
    StepUnderflow,
    /// The state stopped being finite (blow-up of the solution).
    NonFinite,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("integration stalled at x = {reached} ({kind:?})")]
    Integration { reached: f64, kind: StallKind },

    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    NoSignChange {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("root finder did not reach tolerance {tol} within {iterations} iterations")]
    RootNotConverged { tol: f64, iterations: usize },

    #[error("could not bracket {what}")]
    Bracketing { what: &'static str },

    #[error("quadrature did not converge after {levels} levels (last change {last_change:e})")]
    QuadratureNotConverged { levels: usize, last_change: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("geometry routes disagree for n = {n}: |W_ode - W_quad| = {difference:e}")]
    RouteDisagreement { n: u32, difference: f64 },

    #[error("mode (n = {n}, m = {m}) has phi(W) = {phi_w:e}; the solve is not trustworthy")]
    DegenerateMode { n: u32, m: u32, phi_w: f64 },

    #[error("index for n = {n} is not certified: margin {margin:e} vs error estimate {error_estimate:e}")]
    Uncertified {
        n: u32,
        margin: f64,
        error_estimate: f64,
    },

    #[error("Morse index routes disagree for n = {n}: {via_steklov} vs {closed_form}")]
    IndexMismatch {
        n: u32,
        via_steklov: String,
        closed_form: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
