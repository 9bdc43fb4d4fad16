//! Fourier, Poisson and mean-value identities on V(Z/N), in floating point
//! for seeded random functions and exactly in cyclotomic arithmetic.
//!
//! `cargo run --release --example finite_identities -- 7 20`

use g2_cubic::finite::identities::{exhaustive_exact, random_suite};
use g2_cubic::finite::orbit_fibers;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n: u64 = args.next().map(|a| a.parse()).transpose()?.unwrap_or(7);
    let count: usize = args.next().map(|a| a.parse()).transpose()?.unwrap_or(20);

    let fib = orbit_fibers(n)?;
    println!(
        "V(F_{n}): |S1| = {}  |S2| = {}  |V0| = {}",
        fib.s1.len(),
        fib.s2.len(),
        fib.v0.len()
    );

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    println!("{count} random functions mod {n}:");
    for r in random_suite(n, count, &mut rng)? {
        println!("  {:<22} max residual {:.2e}  {}", r.identity_name, r.max_residual, if r.pass { "ok" } else { "FAIL" });
    }
    println!("exact, all point indicators mod 5:");
    for r in exhaustive_exact(5)? {
        println!("  {:<22} max residual {}  {}", r.identity_name, r.max_residual, if r.pass { "ok" } else { "FAIL" });
    }
    Ok(())
}
