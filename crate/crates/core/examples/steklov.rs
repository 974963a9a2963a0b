//! Steklov eigenvalues Lambda_i(n, m) of the Jacobi modes.
//!
//! ```text
//! cargo run --example steklov -- 11        # one dimension, m = 0..=2n
//! ```

use catenoid::geometry::solve_geometry;
use catenoid::spectrum::{steklov_on, Parity};
use catenoid::SolverConfig;

fn main() -> catenoid::Result<()> {
    let cfg = SolverConfig::default();
    let n: u32 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(11);
    let g = solve_geometry(n, &cfg)?;

    println!("n = {n}, W = {:.10}", g.w);
    println!("{:>4} {:>20} {:>20}", "m", "even", "odd");
    for m in 0..=2 * n {
        let even = steklov_on(&g, m, Parity::Even, &cfg)?.lambda;
        let odd = steklov_on(&g, m, Parity::Odd, &cfg)?.lambda;
        let mark = if even < 1.0 { "  <- below 1" } else { "" };
        println!("{m:>4} {even:>20.12} {odd:>20.12}{mark}");
    }
    Ok(())
}
