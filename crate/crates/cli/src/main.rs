use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use valprime::arith::rational::{render, with_decimal_rendering};
use valprime::arith::{parse_rational, Rational};
use valprime::parse::{parse_residues, parse_targets, parse_u64_list};
use valprime::pipeline::Route;
use valprime::places::Place;
use valprime::{Error, Limits};

mod commands;
mod output;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "valprime",
    version,
    about = "Valuations, smooth numbers and progressions, computed exactly"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Render rationals as decimals with this many places.
    #[arg(long, global = true, value_name = "DIGITS")]
    decimal: Option<u32>,
    /// TOML file overriding bounds and budgets.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Worker threads for parallel stages.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Primes up to a bound.
    Primes {
        #[arg(long)]
        bound: u64,
    },
    /// Prime factorization.
    Factor {
        #[arg(long = "n", alias = "N")]
        n: u64,
    },
    /// p-adic valuation of a rational.
    Valuation {
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        q: Rational,
        #[arg(long)]
        p: u64,
    },
    /// Absolute value at one place (a prime or `inf`).
    Absval {
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        q: Rational,
        #[arg(long, value_parser = place)]
        place: Place,
    },
    /// Product of the absolute values over all places.
    ProductFormula {
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        q: Rational,
    },
    /// Rational that is large at every listed prime and at infinity.
    EuclidWitness {
        #[arg(long, value_parser = u64_list)]
        primes: U64List,
    },
    /// Simultaneous approximation at finitely many places.
    Approximate {
        /// Comma-separated `place:value` pairs, e.g. `2:1,3:0,inf:100`.
        #[arg(long, value_parser = targets, allow_hyphen_values = true)]
        targets: Targets,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        eps: Rational,
    },
    /// Integers up to N whose prime factors are among the first r primes.
    Smooth {
        #[arg(long)]
        r: usize,
        #[arg(long = "n", alias = "N")]
        n: u64,
    },
    /// Counting bound for the complement of the smooth set.
    ErdosBound {
        #[arg(long)]
        r: usize,
        #[arg(long = "n", alias = "N")]
        n: u64,
        /// Check every N' <= N instead of N alone.
        #[arg(long)]
        scan: bool,
    },
    /// Sum of 1/p over primes p <= bound after the first r.
    TailSum {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        bound: u64,
    },
    /// Least r whose reciprocal tail up to the bound is below theta.
    MinimalR {
        #[arg(long)]
        bound: u64,
        #[arg(long, value_parser = rational, allow_hyphen_values = true, default_value = "1/2")]
        theta: Rational,
    },
    /// Sum of 1/p over primes p <= bound.
    RecipSum {
        #[arg(long)]
        bound: u64,
        /// Certified fixed-point bounds instead of the exact rational;
        /// required above the exact-sum limit.
        #[arg(long)]
        enclosure: bool,
    },
    /// Smooth-set density at checkpoints against its lower bound.
    Density {
        #[arg(long)]
        r: usize,
        #[arg(long, value_parser = u64_list)]
        checkpoints: U64List,
    },
    /// Exponent class of n mod m over the first r primes.
    Classify {
        #[arg(long = "n", alias = "N")]
        n: u64,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        m: u32,
    },
    /// Split the smooth set into exponent classes.
    Partition {
        #[arg(long)]
        r: usize,
        #[arg(long = "n", alias = "N")]
        n: u64,
        #[arg(long)]
        m: u32,
        /// Members listed per class.
        #[arg(long, default_value_t = 5)]
        show: usize,
    },
    /// n = R * t^m with R free of m-th powers.
    Decompose {
        #[arg(long = "n", alias = "N")]
        n: u64,
        #[arg(long)]
        m: u32,
    },
    /// Lexicographically first k-term progression in a set.
    FindAp {
        #[arg(long, value_parser = u64_list)]
        set: U64List,
        #[arg(long, default_value_t = 3)]
        k: u32,
    },
    /// Largest subset of [1, N] without a k-term progression.
    ApFreeMax {
        #[arg(long = "n", alias = "N")]
        n: u64,
        #[arg(long, default_value_t = 3)]
        k: u32,
    },
    /// Progression search inside every exponent class.
    ClassScan {
        #[arg(long)]
        r: usize,
        #[arg(long = "n", alias = "N")]
        n: u64,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        k: u32,
        /// Restrict to one class, e.g. `(0,1)`.
        #[arg(long, value_parser = residues)]
        class: Option<Residues>,
    },
    /// No three cubes in progression, roots up to the bound.
    VerifyCubes {
        #[arg(long)]
        bound: u64,
    },
    /// No three n-th powers in progression, roots up to the bound.
    VerifyPowers {
        #[arg(long = "exp")]
        exp: u32,
        #[arg(long)]
        bound: u64,
    },
    /// No four squares in progression, roots up to the bound.
    VerifySquares4 {
        #[arg(long)]
        bound: u64,
    },
    /// Three-term progressions of squares, roots up to the bound.
    Squares3 {
        #[arg(long)]
        bound: u64,
    },
    /// Smooth set, classes, per-class search and reduction to powers.
    Prove {
        #[arg(long, value_parser = route)]
        route: Route,
        #[arg(long)]
        r: usize,
        #[arg(long = "n", alias = "N")]
        n: u64,
    },
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn place(s: &str) -> Result<Place, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn route(s: &str) -> Result<Route, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

// Wrappers keep clap from treating a parsed list as a repeated flag.
#[derive(Debug, Clone)]
pub struct U64List(pub Vec<u64>);
#[derive(Debug, Clone)]
pub struct Targets(pub Vec<(Place, Rational)>);
#[derive(Debug, Clone)]
pub struct Residues(pub Vec<u32>);

fn u64_list(s: &str) -> Result<U64List, String> {
    parse_u64_list(s).map(U64List).map_err(|e| e.to_string())
}

fn targets(s: &str) -> Result<Targets, String> {
    parse_targets(s).map(Targets).map_err(|e| e.to_string())
}

fn residues(s: &str) -> Result<Residues, String> {
    parse_residues(s).map(Residues).map_err(|e| e.to_string())
}

/// Result of one command: the text to print and whether it reports a failed
/// theorem.
pub struct Reply {
    pub text: String,
    pub contradiction: bool,
}

fn load_limits(path: Option<&PathBuf>) -> Result<Limits, String> {
    match path {
        None => Ok(Limits::default()),
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            Limits::from_toml(&text).map_err(|e| e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let limits = match load_limits(cli.config.as_ref()) {
        Ok(l) => l,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    if cli.threads == 0 {
        eprintln!("error: --threads must be at least 1");
        return ExitCode::from(1);
    }
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };

    let result = pool.install(|| {
        with_decimal_rendering(cli.decimal, || {
            commands::run(&cli.command, &limits, cli.format)
        })
    });
    match result {
        Ok(reply) => {
            print!("{}", reply.text);
            if reply.contradiction {
                eprintln!("error: counterexample to a proven statement");
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Error::Contradiction(report)) => {
            let text = with_decimal_rendering(cli.decimal, || {
                commands::pipeline_output(&report).render(cli.format)
            });
            print!("{text}");
            eprintln!("error: progression found on route {}", report.route);
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_resource() { 2 } else { 1 })
        }
    }
}

/// A rational in the active rendering mode.
pub fn q(x: &Rational) -> String {
    render(x)
}
