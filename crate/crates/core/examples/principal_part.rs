//! Principal part of the zeta integral for a bundle of test-function
//! data: pole terms, residues, the limit at s = 2 and the truncated variant.
//!
//! `cargo run --example principal_part -- bundle.txt`

use g2_cubic::g2::TruncationParam;
use g2_cubic::zeta::principal::{residue_limit_sequence, richardson_limit};
use g2_cubic::zeta::{pole_terms, principal_part, residues, theorem_rhs, tilde_z_principal, with_bookkeeping, FunctionalBundle};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let b = match std::env::args().nth(1) {
        Some(path) => FunctionalBundle::parse(&std::fs::read_to_string(path)?)?,
        None => FunctionalBundle::random(&mut ChaCha8Rng::seed_from_u64(1)),
    };

    for t in pole_terms(&b) {
        println!("{:<24} pole {:>4}  coeff {:+.6}", t.label, t.pole, t.coeff);
    }
    for r in residues(&b) {
        println!("Res at s = {}: {:+.12}", r.pole, r.value);
    }
    for s in [Complex64::new(3.0, 0.0), Complex64::new(1.0, 2.0)] {
        println!("principal part at {s}: {:.9}", principal_part(&b, s)?);
    }

    let seq = residue_limit_sequence(&b, 6)?;
    println!("(s-2) Z at s = 2 + 10^-m: {seq:?}");
    println!("extrapolated: {:+.12}", richardson_limit(&seq).unwrap_or(f64::NAN));

    let bk = with_bookkeeping(&b);
    for (t1, t2) in [(0.0, 0.0), (1.0, 0.5), (2.0, -1.0)] {
        let t = TruncationParam::new(t1, t2);
        println!(
            "T = ({t1}, {t2}): truncated {:+.9}  template {:+.9}",
            tilde_z_principal(&bk, 2.0, &t)?,
            theorem_rhs(&bk, &t)
        );
    }
    Ok(())
}
