//! GL(2,Z)-classes of integral binary cubic forms with bounded
//! discriminant, by two independent strategies.
//!
//! `cargo run --release --example class_table -- 200`

use g2_cubic::enumeration::{class_table, dirichlet_partial, taniguchi_partition, DiscSign, Strategy};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let x: u64 = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(200);

    let red = class_table(x, Strategy::Reduction, false)?;
    let boxed = class_table(x, Strategy::BoxOracle, false)?;
    println!("{} classes with |disc| <= {x}; strategies agree: {}", red.records.len(), red.class_set() == boxed.class_set());

    for r in red.records.iter().take(12) {
        println!("  disc {:>5}  {}  |Stab| = {}  {:?}", r.disc, r.representative, r.stab_order, r.splitting);
    }

    let p = taniguchi_partition(&red);
    println!("positive by splitting index 1,2,3: {:?}", p.positive);
    println!("negative by splitting index 1,2,3: {:?}", p.negative);
    for s in [1.0, 1.5, 2.0] {
        println!(
            "s = {s}: sum+ = {:.6}  sum- = {:.6}",
            dirichlet_partial(&red, s, DiscSign::Positive)?,
            dirichlet_partial(&red, s, DiscSign::Negative)?
        );
    }
    Ok(())
}
