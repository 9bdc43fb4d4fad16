//! Runs verification suites from a key=value config and prints the JSON
//! report.
//!
//! `cargo run --release --example verify_suite -- "suites = g2,forms"`

use g2_cubic::report::{run_suite, SuiteConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "suites = g2, forms, zeta".into());
    let cfg = SuiteConfig::parse(&text.replace(';', "\n"))?;
    let report = run_suite(&cfg)?;
    eprint!("{}", report.to_text());
    print!("{}", report.to_json()?);
    std::process::exit(if report.all_pass() { 0 } else { 1 });
}
