use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use g2_cubic::enumeration::{class_table, write_atomic, Strategy};
use g2_cubic::forms::{self, BinaryCubicForm, GL2Elt};
use g2_cubic::report::{self, parse_suites, SuiteConfig, VerificationReport};
use g2_cubic::zeta::local::{local_disc_densities, sigma1_arch, sigma1_closed, sigma1_factor};
use g2_cubic::zeta::FunctionalBundle;
use g2_cubic::{Error, Result};

#[derive(Parser)]
#[command(name = "g2cubic", version, about = "Checks and tables for binary cubic forms under the Levi of G2")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run verification suites and print or write a JSON report.
    Verify {
        /// g2, forms, finite, classes, zeta or all (comma separated)
        suite: String,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Restrict the finite suite to one modulus.
        #[arg(long)]
        modulus: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print one line per check instead of JSON.
        #[arg(long)]
        text: bool,
    },
    /// Export the class table with |disc| ≤ X.
    Classes {
        #[arg(long)]
        max_disc: u64,
        #[arg(long, default_value = "reduction")]
        strategy: Strategy,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Classes under SL(2,Z) instead of GL(2,Z).
        #[arg(long)]
        sl2: bool,
    },
    /// Classify a rational form "x1,x2,x3,x4", optionally after acting by "a,b;c,d".
    Form {
        form: BinaryCubicForm,
        #[arg(long)]
        by: Option<GL2Elt>,
    },
    #[command(subcommand)]
    Zeta(ZetaCmd),
}

#[derive(Subcommand)]
enum ZetaCmd {
    /// Residues of the principal part for a key=value bundle file.
    Residues {
        #[arg(long)]
        bundle: PathBuf,
    },
    /// Discriminant valuation densities as CSV.
    Densities {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
    },
    /// Local and archimedean Tate factors at s.
    Sigma1 {
        #[arg(long)]
        s: f64,
        #[arg(long, default_value = "2,3,5,7")]
        primes: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => write_atomic(p, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn verify(suite: &str, config: Option<PathBuf>, seed: Option<u64>, modulus: Option<u64>) -> Result<VerificationReport> {
    let mut cfg = match config {
        Some(p) => SuiteConfig::parse(&std::fs::read_to_string(&p).map_err(|e| Error::io(&p, e))?)?,
        None => SuiteConfig::default(),
    };
    cfg.suites = parse_suites(suite)?;
    if let Some(s) = seed {
        cfg.seed = s;
    }
    if let Some(n) = modulus {
        cfg.moduli = vec![n];
        // exhaustive exact checks stay cheap up to 7^4 points
        cfg.exact_modulus = (n <= 7).then_some(n);
    }
    report::run_suite(&cfg)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Verify { suite, config, seed, modulus, out, text } => {
            let r = verify(&suite, config, seed, modulus)?;
            if text {
                eprint!("{}", r.to_text());
            }
            emit(&out, &r.to_json()?)?;
            if !r.all_pass() {
                for c in r.failures() {
                    eprintln!("FAIL {} residual {:e} tolerance {:e}", c.check_id, c.residual, c.tolerance);
                }
            }
            Ok(r.all_pass())
        }
        Cmd::Classes { max_disc, strategy, out, format, sl2 } => {
            let t = class_table(max_disc, strategy, sl2)?;
            let text = match format {
                Format::Csv => t.to_csv(),
                Format::Json => t.to_json()?,
            };
            emit(&out, &text)?;
            eprintln!("{} classes with |disc| <= {max_disc}", t.records.len());
            Ok(true)
        }
        Cmd::Form { form, by } => {
            let f = match &by {
                Some(l) => forms::act(&form, l),
                None => form,
            };
            println!("form {f}");
            println!("disc {}", forms::discriminant(&f));
            println!("orbit {:?}", forms::classify_orbit(&f));
            Ok(true)
        }
        Cmd::Zeta(ZetaCmd::Residues { bundle }) => {
            let text = std::fs::read_to_string(&bundle).map_err(|e| Error::io(&bundle, e))?;
            let b = FunctionalBundle::parse(&text)?;
            println!("pole,residue");
            for l in report::residue_lines(&b) {
                println!("{l}");
            }
            Ok(true)
        }
        Cmd::Zeta(ZetaCmd::Densities { p, k }) => {
            print!("{}", local_disc_densities(p, k)?.to_csv());
            Ok(true)
        }
        Cmd::Zeta(ZetaCmd::Sigma1 { s, primes }) => {
            println!("place,truncated,closed");
            for p in primes.split(',') {
                let p: u64 = p.trim().parse().map_err(|_| Error::Parse(format!("bad prime `{p}`")))?;
                println!("{p},{},{}", sigma1_factor(p, s, 64)?, sigma1_closed(p, s));
            }
            let a = sigma1_arch(s)?;
            println!("inf,{},{}", a.exp_sinh, a.log_trapezoid);
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
