//! `dtorus`: batch frontend for exact torus spectra, multiplicity criteria,
//! vanishing sums and spectral zeta values.

mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dtorus::Error;
use num_rational::Rational64;

use commands::RunConfig;
use output::{Format, Report, Status};

#[derive(Debug, Parser)]
#[command(name = "dtorus", version, about = "Exact eigenvalue multiplicities of discrete tori")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,

    /// Maximum number of distinct keys held by any intermediate table.
    #[arg(long, env = "DTORUS_BUDGET", default_value_t = dtorus::DEFAULT_BUDGET, global = true,
          value_parser = parse_budget)]
    budget: usize,

    /// Working precision in bits for decimal values.
    #[arg(long, env = "DTORUS_BITS", default_value_t = 128, global = true,
          value_parser = parse_bits)]
    bits: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full spectrum of T^d_N, sorted by value descending.
    Spectrum {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: usize,
        /// Report Laplacian eigenvalues 2d − μ instead of adjacency ones.
        #[arg(long)]
        laplacian: bool,
    },
    /// Multiplicity of the eigenvalue at an index tuple.
    Mult {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        tuple: Vec<u64>,
    },
    /// Bounded or linear growth class of the eigenvalue at an index tuple.
    Growth {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        tuple: Vec<u64>,
    },
    /// Whether 0 is an eigenvalue of T^d_N, its multiplicity and growth class.
    Zero {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: usize,
    },
    /// Classify four angles, in units of π, with vanishing cosine sum.
    Cos4 {
        #[arg(allow_hyphen_values = true, value_parser = parse_rational)]
        a1: Rational64,
        #[arg(allow_hyphen_values = true, value_parser = parse_rational)]
        a2: Rational64,
        #[arg(allow_hyphen_values = true, value_parser = parse_rational)]
        a3: Rational64,
        #[arg(allow_hyphen_values = true, value_parser = parse_rational)]
        a4: Rational64,
    },
    /// Vanishing sums of N-th roots of unity up to a given length.
    Vanishing {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        /// Also list decomposable sums.
        #[arg(long)]
        all: bool,
    },
    /// Spectral zeta value: discrete with --n, continuum partial sum with --cutoff.
    Zeta {
        #[arg(long, conflicts_with = "cutoff")]
        n: Option<u64>,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long)]
        s: f64,
        #[arg(long, value_parser = parse_count)]
        cutoff: Option<u64>,
    },
    /// Check a published claim over a range.
    Verify {
        #[command(subcommand)]
        check: Verify,
    },
}

#[derive(Debug, Subcommand)]
enum Verify {
    /// Nonzero multiplicities of T^2_N are at most 24.
    Bound24 {
        #[arg(long, default_value_t = 3)]
        nmin: u64,
        #[arg(long, default_value_t = 420)]
        nmax: u64,
    },
    /// The T^2_60 table of multiplicities above 8.
    Table60,
    /// The zero-eigenvalue criterion against exact membership.
    Zero {
        #[arg(long, default_value_t = 60)]
        nmax: u64,
        #[arg(long, default_value_t = 6)]
        dmax: usize,
    },
    /// Rescaled discrete zeta values approach the continuum value.
    Cjk {
        #[arg(long, default_value_t = 2.0)]
        s: f64,
        #[arg(long, default_value = "1000000", value_parser = parse_count)]
        cutoff: u64,
        #[arg(long, value_delimiter = ',', default_value = "16,32,64,128")]
        ns: Vec<u64>,
        #[arg(long, default_value_t = 0.02)]
        max_rel_gap: f64,
    },
    /// Witnesses for 2d in <p,q> and optimality of the threshold.
    Semigroup {
        #[arg(long, default_value_t = 23)]
        pmax: u64,
        /// Width of the checked range of 2d above the threshold.
        #[arg(long, default_value_t = 40)]
        span: u64,
    },
}

fn parse_rational(s: &str) -> Result<Rational64, String> {
    s.trim().parse::<Rational64>().map_err(|e| format!("'{s}' is not a rational: {e}"))
}

fn parse_budget(s: &str) -> Result<usize, String> {
    match parse_count(s)? {
        0 => Err("budget must be positive".into()),
        v => Ok(v as usize),
    }
}

fn parse_bits(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(v) if v >= 64 => Ok(v),
        _ => Err(format!("'{s}' is not a precision of at least 64 bits")),
    }
}

/// Accepts plain integers and forms like `1e6`.
fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    match s.parse::<f64>() {
        Ok(v) if v >= 0.0 && v.fract() == 0.0 && v < 2f64.powi(63) => Ok(v as u64),
        _ => Err(format!("'{s}' is not a nonnegative integer")),
    }
}

fn run(cli: &Cli) -> dtorus::Result<Report> {
    let cfg = RunConfig { budget: cli.budget, bits: cli.bits };
    match &cli.command {
        Command::Spectrum { n, d, laplacian } => commands::spectrum(cfg, *n, *d, *laplacian),
        Command::Mult { n, d, tuple } => commands::mult(cfg, *n, *d, tuple),
        Command::Growth { n, d, tuple } => commands::growth(cfg, *n, *d, tuple),
        Command::Zero { n, d } => commands::zero(cfg, *n, *d),
        Command::Cos4 { a1, a2, a3, a4 } => commands::cos4([*a1, *a2, *a3, *a4]),
        Command::Vanishing { n, max_len, all } => commands::vanishing(cfg, *n, *max_len, *all),
        Command::Zeta { n, d, s, cutoff } => commands::zeta(cfg, *n, *d, *s, *cutoff),
        Command::Verify { check } => match check {
            Verify::Bound24 { nmin, nmax } => commands::verify_bound24_cmd(cfg, *nmin, *nmax),
            Verify::Table60 => commands::verify_table60(cfg),
            Verify::Zero { nmax, dmax } => commands::verify_zero(cfg, *nmax, *dmax),
            Verify::Cjk { s, cutoff, ns, max_rel_gap } => {
                commands::verify_cjk(cfg, *s, *cutoff, ns, *max_rel_gap)
            }
            Verify::Semigroup { pmax, span } => commands::verify_semigroup(*pmax, *span),
        },
    }
}

fn error_status(e: &Error) -> Status {
    match e {
        Error::Bound24Violated { .. } => Status::ClaimFailed,
        Error::ConservationViolated { .. } | Error::UnclassifiedVanishing(_) => Status::Internal,
        _ => Status::Resource,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(report.render(cli.format).as_bytes()).is_err() {
                return ExitCode::from(Status::Resource as u8);
            }
            if report.status != Status::Pass {
                eprintln!("dtorus: {} reported status {:?}", report.command, report.status);
            }
            ExitCode::from(report.status as u8)
        }
        Err(e) => {
            eprintln!("dtorus: error: {e}");
            ExitCode::from(error_status(&e) as u8)
        }
    }
}
