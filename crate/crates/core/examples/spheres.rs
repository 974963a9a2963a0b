//! Jacobi spectrum and Morse index of the minimal products S^p x S^q.
//!
//! ```text
//! cargo run --example spheres -- 2 3
//! ```

use catenoid::spheres::{sphere_modes, sphere_morse_index, sphere_morse_index_by_rows};

fn main() -> catenoid::Result<()> {
    let mut args = std::env::args().skip(1).filter_map(|a| a.parse::<u32>().ok());
    let (p, q) = (args.next().unwrap_or(2), args.next().unwrap_or(3));

    println!("S^{p} x S^{q}: modes with i + j <= 3");
    for mode in sphere_modes(p, q, 3)? {
        println!(
            "  (i, j) = ({}, {}): J = {:>9.4}, degeneracy {}{}",
            mode.i,
            mode.j,
            mode.eigenvalue,
            mode.degeneracy,
            if mode.is_negative() { "  negative" } else { "" }
        );
    }
    println!(
        "Morse index {} by enumeration, {} by rows, p + q + 3 = {}",
        sphere_morse_index(p, q)?,
        sphere_morse_index_by_rows(p, q)?,
        p + q + 3
    );
    Ok(())
}
