//! The integrated Jacobi modes against every explicitly known Jacobi field.
//!
//! ```text
//! cargo run --example oracles -- 12
//! ```

use catenoid::spectrum::{closed_form_deviation, ClosedFormTag};
use catenoid::SolverConfig;

fn main() -> catenoid::Result<()> {
    let cfg = SolverConfig::default();
    let top: u32 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(12);

    print!("{:>4}", "n");
    for tag in ClosedFormTag::ALL {
        print!(" {:>10}", tag.to_string());
    }
    println!();
    for n in 2..=top {
        print!("{n:>4}");
        for tag in ClosedFormTag::ALL {
            print!(" {:>10.1e}", closed_form_deviation(n, tag, 20, &cfg)?);
        }
        println!();
    }
    Ok(())
}
