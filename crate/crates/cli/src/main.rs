//! `circint`: Galois-orbit partitions and integrality of circulant digraphs.

mod commands;
mod render;

use std::io::Write;
use std::process::ExitCode;

use circint::{AbelianField, Limits};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Integral circulant digraphs over abelian number fields.
///
/// Fields are given as `Q`, `Qi`, `sqrt:<d>`, `cyclo:<m>` or
/// `custom:<m>:<g1,g2,...>` (the subgroup of (Z/mZ)* generated by the g's fixes
/// the field). Only abelian fields can be described; for a general number field
/// supply the data of its intersection with a cyclotomic field.
///
/// Exit codes: 0 success or integral, 1 not integral or verification mismatch,
/// 2 usage or input error, 3 resource limit exceeded.
#[derive(Debug, Parser)]
#[command(name = "circint", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    #[command(flatten)]
    limits: LimitArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Args)]
struct LimitArgs {
    /// Largest modulus, including lcm(conductor, n).
    #[arg(long, env = "CIRC_LIMIT_MODULUS", default_value_t = Limits::default().modulus, global = true)]
    limit_modulus: u64,

    /// Largest number of sets `enumerate` may print without --limit.
    #[arg(long, env = "CIRC_LIMIT_ENUM", default_value_t = Limits::default().enumeration, global = true)]
    limit_enum: u64,

    /// Largest order accepted by exact cyclotomic arithmetic.
    #[arg(long, env = "CIRC_LIMIT_EXACT", default_value_t = Limits::default().exact_order, global = true)]
    limit_exact: u64,

    /// Largest order accepted by exhaustive verification.
    #[arg(long, env = "CIRC_LIMIT_EXHAUSTIVE", default_value_t = Limits::default().exhaustive_order, global = true)]
    limit_exhaustive: u64,
}

impl LimitArgs {
    fn limits(&self) -> Limits {
        Limits {
            modulus: self.limit_modulus,
            exact_order: self.limit_exact,
            enumeration: self.limit_enum,
            exhaustive_order: self.limit_exhaustive,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the Galois-orbit partition of {1, ..., n-1}.
    Partition {
        n: u64,
        #[arg(long, value_parser = parse_field)]
        field: AbelianField,
    },
    /// Decide whether D(n, S) is integral over the field (exit 0 if so, 1 if not).
    Check {
        n: u64,
        /// Comma list of residues in [1, n), or `blocks:i,j,...` to select partition blocks.
        #[arg(long, allow_hyphen_values = true)]
        set: String,
        #[arg(long, value_parser = parse_field)]
        field: AbelianField,
    },
    /// Stream every integral connection set as JSON lines, then a summary line.
    Enumerate {
        n: u64,
        #[arg(long, value_parser = parse_field)]
        field: AbelianField,
        /// Stop after this many sets.
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Print the eigenvalues lambda_r, r = 0..n-1.
    Spectrum {
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        set: String,
        /// Field used to resolve `blocks:` set specs.
        #[arg(long, value_parser = parse_field, default_value = "Q")]
        field: AbelianField,
        /// Exact coefficient vectors reduced modulo Phi_n.
        #[arg(long, conflicts_with = "numeric", required_unless_present = "numeric")]
        exact: bool,
        /// Complex values rounded to 12 significant digits.
        #[arg(long)]
        numeric: bool,
    },
    /// Cross-check the partition criterion against the exact eigenvalue oracle.
    Verify {
        /// A single order `n` or an inclusive range `a..b`.
        range: String,
        #[arg(long, value_parser = parse_field)]
        field: AbelianField,
        /// Check every subset of {1, ..., n-1}.
        #[arg(long, conflicts_with = "samples", required_unless_present = "samples")]
        exhaustive: bool,
        /// Check this many seeded random subsets per order.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also check block sums and block orthogonality.
        #[arg(long)]
        lemma1: bool,
        /// Also run the floating-point lattice check (fields Q and Qi only).
        #[arg(long)]
        numeric: bool,
        /// Tolerance of the floating-point lattice check.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Report measured run times (makes output non-reproducible).
        #[arg(long)]
        timing: bool,
    },
}

fn parse_field(spec: &str) -> Result<AbelianField, String> {
    spec.parse().map_err(|e: circint::Error| e.to_string())
}

/// A failure with the process exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<circint::Error> for Failure {
    fn from(e: circint::Error) -> Self {
        Failure {
            code: if e.is_resource_limit() { 3 } else { 2 },
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: 2,
            message: format!("write failed: {e}"),
        }
    }
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = cli.limits.limits();
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let result = match cli.command {
        Command::Partition { n, field } => commands::partition(&mut out, cli.format, n, &field, &limits),
        Command::Check { n, set, field } => commands::check(&mut out, cli.format, n, &set, &field, &limits),
        Command::Enumerate { n, field, limit } => {
            commands::enumerate(&mut out, cli.format, n, &field, limit, &limits)
        }
        Command::Spectrum {
            n,
            set,
            field,
            exact,
            numeric: _,
        } => commands::spectrum(&mut out, cli.format, n, &set, &field, exact, &limits),
        Command::Verify {
            range,
            field,
            exhaustive: _,
            samples,
            seed,
            lemma1,
            numeric,
            tol,
            timing,
        } => {
            let options = commands::VerifyOptions {
                samples,
                seed,
                lemma1,
                numeric,
                tol,
                timing,
            };
            commands::verify(&mut out, cli.format, &range, &field, &options, &limits)
        }
    };
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(code), Ok(())) => ExitCode::from(code),
        (Err(failure), _) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
        (Ok(_), Err(e)) => {
            eprintln!("error: write failed: {e}");
            ExitCode::from(2)
        }
    }
}
