//! Exact p-adic densities of the discriminant valuation, and the Σ₁ factors.
//!
//! `cargo run --release --example local_densities -- 5 4`

use std::time::Instant;

use g2_cubic::zeta::local::{local_disc_densities, sigma1_arch, sigma1_closed, sigma1_factor};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let p: u64 = args.next().map(|a| a.parse()).transpose()?.unwrap_or(3);
    let k: u32 = args.next().map(|a| a.parse()).transpose()?.unwrap_or(4);

    let start = Instant::now();
    let table = local_disc_densities(p, k)?;
    eprintln!("counted in {:.2?} ({:?})", start.elapsed(), table.mode);
    print!("{}", table.to_csv());

    for s in [2.0 / 3.0, 2.0, 3.0] {
        let arch = sigma1_arch(s)?;
        println!(
            "s = {s:.4}: p-adic {:.12} (closed {:.12}), arch {:.12} (schemes differ by {:.1e})",
            sigma1_factor(p, s, 40)?,
            sigma1_closed(p, s),
            arch.value(),
            arch.discrepancy()
        );
    }
    Ok(())
}
