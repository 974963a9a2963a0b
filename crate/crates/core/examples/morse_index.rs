//! Certified Morse index of the critical catenoid.
//!
//! ```text
//! cargo run --release --example morse_index -- 2 12 91 100 5000 100000
//! ```

use catenoid::index::{index_report, EXACT_INDEX_LIMIT};
use catenoid::SolverConfig;

fn main() -> catenoid::Result<()> {
    let cfg = SolverConfig::default();
    let ns: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let ns = if ns.is_empty() { vec![2, 5, 12, 91, 100, 1000] } else { ns };

    for n in ns {
        let r = index_report(n, &cfg)?;
        let mi = match &r.morse_index {
            Some(mi) => mi.to_string(),
            None => format!("(n > {EXACT_INDEX_LIMIT}, log only)"),
        };
        println!(
            "n = {n}: K0 = {}, MI = {mi}, ln MI = {:.6}",
            r.k0, r.log_morse_index
        );
        println!(
            "    Lambda_0(n,{}) = {:.8} < 1 <= Lambda_0(n,{}) = {:.8}; margin {:.3e}, error {:.1e}, {}",
            r.last_below.0,
            r.last_below.1,
            r.first_above.0,
            r.first_above.1,
            r.margin,
            r.error_estimate,
            if r.certified { "certified" } else { "NOT certified" }
        );
    }
    Ok(())
}
