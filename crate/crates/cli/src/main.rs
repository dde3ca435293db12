//! Command-line frontend: element validation, class-group listing,
//! classification, verification sweeps and raw symbol computation.
//!
//! Exit codes are a stable contract for scripting:
//! 0 success, 1 domain rejection, 2 usage error, 3 internal
//! contradiction (never expected).

use clap::{Parser, Subcommand, ValueEnum};
use cubres::classmap::{self, ClassifyConfig};
use cubres::eisenstein::{self, EisensteinInt};
use cubres::qform::{self, QuadForm};
use cubres::quadint::{self, QuadInt};
use cubres::{residuacity, Error};
use num_bigint::BigInt;
use num_traits::Signed;
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "cubres",
    version,
    about = "Cubic residuacity of real quadratic integers via form class groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Upper bound for prime scans.
    #[arg(long, global = true, env = "CUBRES_PRIME_LIMIT", default_value_t = 100_000)]
    prime_limit: u64,
    /// Oracle samples per class during classification.
    #[arg(long, global = true, default_value_t = 5)]
    samples: usize,
    /// Ring bound for witness and equivalent-form searches.
    #[arg(long, global = true, default_value_t = 50)]
    search_bound: u32,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Seed for the randomized sweeps.
    #[arg(long, global = true, default_value_t = 0x00c0_ffee)]
    seed: u64,
    /// More diagnostics on stderr (repeatable).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Subcommand)]
enum Command {
    /// Check membership of A + B*sqrt(D) and print the derived data.
    Validate {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        d: String,
    },
    /// List the reduced forms of the class group with parameter d < 0.
    #[command(name = "class-group")]
    ClassGroup {
        #[arg(allow_hyphen_values = true)]
        d: String,
    },
    /// Full classification: class map, kernel, sampled oracle verdicts.
    Classify {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        d: String,
    },
    /// Cross-check the criterion, symbol agreement and twist invariance.
    Verify {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        d: String,
    },
    /// Cubic Jacobi symbol of two Eisenstein operands (c0+c1w syntax).
    Symbol {
        #[arg(allow_hyphen_values = true)]
        numerator: String,
        #[arg(allow_hyphen_values = true)]
        denominator: String,
    },
    /// Compose two form literals [a,2b,c] of equal discriminant.
    Compose { f1: String, f2: String },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

fn main() -> ExitCode {
    // die quietly on a closed pipe instead of panicking mid-print
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CmdError { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}

struct CmdError {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> CmdError {
    CmdError {
        code: 2,
        message: message.into(),
    }
}

fn domain(message: impl Into<String>) -> CmdError {
    CmdError {
        code: 1,
        message: message.into(),
    }
}

impl From<Error> for CmdError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Contradiction(_) => 3,
            Error::Parse(_)
            | Error::NonNegativeDiscriminant
            | Error::RamifiedDenominator
            | Error::DenominatorDivisibleBy3(_)
            | Error::UnitDenominator
            | Error::ZeroDenominator
            | Error::BelowRange => 2,
            _ => 1,
        };
        CmdError {
            code,
            message: e.to_string(),
        }
    }
}

fn parse_int(s: &str) -> Result<BigInt, CmdError> {
    BigInt::from_str(s.trim()).map_err(|_| usage(format!("not an integer: {s:?}")))
}

fn run(cli: &Cli) -> Result<(), CmdError> {
    match &cli.command {
        Command::Validate { a, b, d } => cmd_validate(cli, a, b, d),
        Command::ClassGroup { d } => cmd_class_group(cli, d),
        Command::Classify { a, b, d } => cmd_classify(cli, a, b, d),
        Command::Verify { a, b, d } => cmd_verify(cli, a, b, d),
        Command::Symbol {
            numerator,
            denominator,
        } => cmd_symbol(cli, numerator, denominator),
        Command::Compose { f1, f2 } => cmd_compose(cli, f1, f2),
    }
}

fn validated(a: &str, b: &str, d: &str, format: Format) -> Result<QuadInt, CmdError> {
    let (a, b, d) = (parse_int(a)?, parse_int(b)?, parse_int(d)?);
    quadint::validate(&a, &b, &d).map_err(|rej| {
        let message = match format {
            Format::Json => serde_json::json!({
                "valid": false,
                "violations": rej.names(),
            })
            .to_string(),
            _ => format!("invalid element: {rej}"),
        };
        domain(message)
    })
}

fn cmd_validate(cli: &Cli, a: &str, b: &str, d: &str) -> Result<(), CmdError> {
    let u = validated(a, b, d, cli.format)?;
    match cli.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&u).expect("report serializes")
        ),
        Format::Csv => {
            println!("A,B,D,norm,norm_root,C,Q,d");
            println!(
                "{},{},{},{},{},{},{},{}",
                u.a(),
                u.b(),
                u.radicand(),
                u.norm(),
                u.norm_root(),
                u.c_factor(),
                u.q_factor(),
                u.disc()
            );
        }
        Format::Table => {
            println!("valid: {u}");
            println!("norm      = {}", u.norm());
            println!("norm_root = {}", u.norm_root());
            println!("C         = {}", u.c_factor());
            println!("Q         = {}", u.q_factor());
            println!("d         = {}", u.disc());
        }
    }
    Ok(())
}

fn cmd_class_group(cli: &Cli, d: &str) -> Result<(), CmdError> {
    let d = parse_int(d)?;
    if !d.is_negative() {
        return Err(usage("the discriminant parameter must be negative"));
    }
    let group = qform::enumerate(&d)?;
    let marker = |f: &QuadForm| qform::h2_marker(f).ok();
    match cli.format {
        Format::Json => {
            let classes: Vec<serde_json::Value> = group
                .classes()
                .iter()
                .map(|c| {
                    serde_json::json!({
                        "form": c.rep().to_string(),
                        "h2_marker": marker(c.rep()),
                    })
                })
                .collect();
            println!(
                "{}",
                serde_json::json!({
                    "d": d.to_string(),
                    "class_count": group.len(),
                    "classes": classes,
                })
            );
        }
        Format::Csv => {
            println!("form,h2_marker");
            for c in group.classes() {
                match marker(c.rep()) {
                    Some(m) => println!("{},{}", c.rep(), m),
                    None => println!("{},", c.rep()),
                }
            }
        }
        Format::Table => {
            println!("d = {d}: {} classes", group.len());
            for c in group.classes() {
                match marker(c.rep()) {
                    Some(m) => println!("{}  marker={}", c.rep(), m),
                    None => println!("{}", c.rep()),
                }
            }
        }
    }
    Ok(())
}

fn cmd_classify(cli: &Cli, a: &str, b: &str, d: &str) -> Result<(), CmdError> {
    let u = validated(a, b, d, cli.format)?;
    let config = ClassifyConfig {
        prime_limit: cli.prime_limit,
        samples_per_class: cli.samples,
        search_bound: cli.search_bound,
    };
    let report = classmap::classify(&u, &config)?;
    match cli.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        ),
        Format::Csv => {
            println!("form,in_h2,J,witness,samples");
            for row in &report.table {
                let samples: Vec<String> = row
                    .samples
                    .iter()
                    .map(|s| format!("{}:{}", s.p, s.cubic))
                    .collect();
                println!(
                    "{},{},{},{},{}",
                    row.form,
                    row.in_h2,
                    row.j,
                    row.witness,
                    samples.join(";")
                );
            }
        }
        Format::Table => {
            println!("u = {u}, d = {}", report.d);
            println!(
                "classes: {}   marker-1 subgroup: {}   kernel: {}",
                report.class_count,
                report.h2_count,
                report.kernel.len()
            );
            let kernel: Vec<String> = report.kernel.iter().map(|f| f.to_string()).collect();
            println!("kernel: {}", kernel.join(" "));
            println!(
                "{:<16} {:>5} {:>3}  {:<16} samples",
                "form", "in_h2", "J", "witness"
            );
            for row in &report.table {
                let samples: Vec<String> = row
                    .samples
                    .iter()
                    .map(|s| format!("{}{}", s.p, if s.cubic { "+" } else { "-" }))
                    .collect();
                println!(
                    "{:<16} {:>5} {:>3}  {:<16} {}",
                    row.form.to_string(),
                    row.in_h2,
                    row.j.to_string(),
                    row.witness.to_string(),
                    samples.join(" ")
                );
            }
            if let Some(f) = report.empirical_fraction {
                println!("cubic fraction over samples: {f:.4}");
            }
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
        }
    }
    Ok(())
}

fn cmd_verify(cli: &Cli, a: &str, b: &str, d: &str) -> Result<(), CmdError> {
    let u = validated(a, b, d, cli.format)?;
    if cli.verbose > 0 {
        eprintln!("sweeping primes to {} ...", cli.prime_limit);
    }
    let criterion = residuacity::criterion_sweep(&u, cli.prime_limit, cli.search_bound)?;
    let agreement = residuacity::agreement_sweep(&u, 2_000, cli.seed)?;
    let twist = residuacity::twist_sweep(&u, 500, cli.seed ^ 0x5eed)?;
    let failures = criterion.failures.len() as u64 + agreement.failures + twist.failures;
    let checks = criterion.checked + agreement.samples + twist.samples;
    match cli.format {
        Format::Json => println!(
            "{}",
            serde_json::json!({
                "u": u,
                "prime_limit": cli.prime_limit,
                "criterion": criterion,
                "agreement": agreement,
                "twist": twist,
                "checks": checks,
                "failures": failures,
            })
        ),
        _ => {
            println!(
                "criterion: {} primes checked, {} skipped (no admissible representation)",
                criterion.checked, criterion.skipped_no_admissible
            );
            println!(
                "symbol agreement: {} tuples ({} composite)",
                agreement.samples, agreement.composite_values
            );
            println!("twist invariance: {} tuples", twist.samples);
            println!("{checks} checks, {failures} failures");
        }
    }
    if failures > 0 {
        let dump = serde_json::to_string(&criterion.failures).unwrap_or_default();
        return Err(CmdError {
            code: 3,
            message: format!("counterexamples found: {dump}"),
        });
    }
    Ok(())
}

fn cmd_symbol(cli: &Cli, num: &str, den: &str) -> Result<(), CmdError> {
    let alpha: EisensteinInt = num.parse().map_err(|e: Error| usage(e.to_string()))?;
    let beta: EisensteinInt = den.parse().map_err(|e: Error| usage(e.to_string()))?;
    let fast = eisenstein::cubic_symbol(&alpha, &beta)?;
    // cross-check against the factoring oracle at small norms
    if beta.norm() <= BigInt::from(100_000_000u64) {
        let slow = eisenstein::cubic_symbol_oracle(&alpha, &beta)?;
        if slow != fast {
            return Err(Error::Contradiction(format!(
                "symbol mismatch at ({alpha}, {beta}): fast {fast}, oracle {slow}"
            ))
            .into());
        }
    }
    match cli.format {
        Format::Json => println!(
            "{}",
            serde_json::json!({
                "numerator": alpha.to_string(),
                "denominator": beta.to_string(),
                "symbol": fast,
            })
        ),
        Format::Csv => {
            println!("numerator,denominator,symbol");
            println!("{alpha},{beta},{fast}");
        }
        Format::Table => println!("{fast}"),
    }
    Ok(())
}

fn cmd_compose(cli: &Cli, f1: &str, f2: &str) -> Result<(), CmdError> {
    let f1: QuadForm = f1.parse().map_err(|e: Error| usage(e.to_string()))?;
    let f2: QuadForm = f2.parse().map_err(|e: Error| usage(e.to_string()))?;
    if f1.disc() != f2.disc() {
        return Err(usage("forms have different discriminants"));
    }
    let product = qform::compose(&f1, &f2)?;
    match cli.format {
        Format::Json => println!(
            "{}",
            serde_json::json!({
                "f1": f1.to_string(),
                "f2": f2.to_string(),
                "product": product.rep().to_string(),
            })
        ),
        Format::Csv => {
            println!("f1,f2,product");
            println!("{f1},{f2},{}", product.rep());
        }
        Format::Table => println!("{}", product.rep()),
    }
    Ok(())
}
