//! Computed values against their large-dimension predictions.
//!
//! ```text
//! cargo run --release --example asymptotics
//! ```

use catenoid::asymptotics::{c_ratio, deviation_report, log_spaced, predicted_geometry, DeviationKind};
use catenoid::geometry::{alpha_of, solve_geometry};
use catenoid::SolverConfig;

fn main() -> catenoid::Result<()> {
    let cfg = SolverConfig::default();

    println!("geometry: computed vs leading order");
    for n in [10, 100, 1000, 10_000] {
        let g = solve_geometry(n, &cfg)?;
        let p = predicted_geometry(alpha_of(n))?;
        println!(
            "  n = {n:>6}: W = {:.8} (bar {:.8}), H = {:.8} (bar {:.8})",
            g.w, p.w_bar, g.h, p.h_bar
        );
    }

    let ns = log_spaced(10, 10_000, 4);
    for kind in [DeviationKind::Lambda, DeviationKind::K0, DeviationKind::LogMi] {
        let report = deviation_report(kind, &ns, &[10], &cfg)?;
        println!("\n{kind}: {}", report.rows[0].scaling_label);
        for r in &report.rows {
            println!(
                "  n = {:>6}: computed {:>14.6}, predicted {:>14.6}, scaled {:+.4}{}",
                r.n,
                r.computed,
                r.predicted,
                r.scaled_error,
                if r.spike { "  (spike)" } else { "" }
            );
        }
    }

    println!("\nrescaled profile c_alpha / cos(pi x / 2) at x = 0.5:");
    for alpha in [10.0, 100.0, 1000.0] {
        println!("  alpha = {alpha:>6}: {:.8}", c_ratio(alpha, 0.5, &cfg)?);
    }
    Ok(())
}
