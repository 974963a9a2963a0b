//! Free-boundary geometry of the n-dimensional critical catenoid.
//!
//! ```text
//! cargo run --example geometry -- 2 3 10 100 1000
//! ```

use catenoid::geometry::{profile, solve_geometry};
use catenoid::SolverConfig;

fn main() -> catenoid::Result<()> {
    let cfg = SolverConfig::default();
    let ns: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let ns = if ns.is_empty() { vec![2, 3, 4, 10, 100, 1000] } else { ns };

    println!("{:>6} {:>14} {:>14} {:>14} {:>14}", "n", "W", "H", "L", "R");
    for &n in &ns {
        let g = solve_geometry(n, &cfg)?;
        println!("{n:>6} {:>14.10} {:>14.10} {:>14.10} {:>14.10}", g.w, g.h, g.l, g.r);
    }

    // The profile itself, with the first integral f_x^2 = f^alpha - 1 as a check.
    let n = ns[0];
    let g = solve_geometry(n, &cfg)?;
    println!("\nprofile of n = {n} on [0, W]:");
    for k in 0..=5 {
        let p = profile(n, g.w * f64::from(k) / 5.0, &cfg)?;
        println!(
            "  x = {:.6}  f = {:.10}  f_x = {:.10}  residual = {:.1e}",
            p.x,
            p.f,
            p.f_x,
            p.first_integral_residual(g.alpha)
        );
    }
    Ok(())
}
