use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Natural log of the gamma function for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "log_gamma needs a positive finite argument, got {x}"
        )));
    }
    Ok(statrs::function::gamma::ln_gamma(x))
}

/// `ln B(s, t)` through log-gamma.
pub fn log_beta(s: f64, t: f64) -> Result<f64> {
    Ok(log_gamma(s)? + log_gamma(t)? - log_gamma(s + t)?)
}

/// Euler's beta function `B(s, t) = Gamma(s) Gamma(t) / Gamma(s + t)`.
pub fn beta(s: f64, t: f64) -> Result<f64> {
    log_beta(s, t).map(f64::exp)
}

/// Exact binomial coefficient; zero whenever `k < 0`, `k > n` or `n < 0`.
pub fn binomial_exact(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step.
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `ln C(n, k)` via log-gamma; `-inf` outside the support.
pub fn log_binomial(n: i64, k: i64) -> f64 {
    if n < 0 || k < 0 || k > n {
        return f64::NEG_INFINITY;
    }
    if k == 0 || k == n {
        return 0.0;
    }
    let (n, k) = (n as f64, k as f64);
    statrs::function::gamma::ln_gamma(n + 1.0)
        - statrs::function::gamma::ln_gamma(k + 1.0)
        - statrs::function::gamma::ln_gamma(n - k + 1.0)
}

/// Natural log of an arbitrary-size integer (`-inf` for zero).
pub fn ln_biguint(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 64 {
        return v.to_u64().map(|x| (x as f64).ln()).unwrap_or(f64::NAN);
    }
    let shift = bits - 64;
    let top = (v >> shift).to_u64().unwrap_or(u64::MAX);
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}
