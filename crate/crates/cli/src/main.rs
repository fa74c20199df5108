//! `qtorus`: reports over algebra and module files.
//!
//! Exit codes: 0 success, 1 none found or inconclusive, 2 invalid input.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

use commands::{Outcome, Searches};

#[derive(Parser)]
#[command(name = "qtorus", version, about = "Quantum tori, their cyclic modules and skew Laurent constructions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgebraQuery {
    Check,
    Center,
    Simple,
    DerivedUnits,
}

#[derive(clap::Args)]
struct BoundArgs {
    /// Box side for cofactor supports.
    #[arg(long, default_value_t = 2)]
    degree: usize,
    /// Entry bound for sublattice searches.
    #[arg(long, default_value_t = 1)]
    coeff: i64,
}

impl BoundArgs {
    fn searches(&self) -> Searches {
        Searches { degree: self.degree, coeff: self.coeff }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Validate an algebra file or report on its pairing.
    Algebra {
        query: AlgebraQuery,
        file: PathBuf,
    },
    /// Fan bounds for a cyclic module, or an exclusion certificate at a character.
    Delta {
        file: PathBuf,
        /// Require one relation and print the exact fan.
        #[arg(long, conflicts_with = "certify")]
        principal: bool,
        /// Character such as `(1,2)` or `1/2,-1`.
        #[arg(long, allow_hyphen_values = true)]
        certify: Option<String>,
        /// Centered box side for the certificate search.
        #[arg(long, default_value_t = 4)]
        bound: usize,
    },
    /// GK dimension with its certificate route.
    Gk {
        file: PathBuf,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Tensor product of two cyclic modules, printed as a module file.
    Tensor { first: PathBuf, second: PathBuf },
    /// Symplectic block decomposition of an integer pairing (d = 1, m = 0).
    Decompose { file: PathBuf },
    /// Least s with mu_k + s e_k pairwise commuting, mu_k in C.
    Commuting {
        file: PathBuf,
        /// Generators of the isotropic sublattice C, rows separated by `;`.
        #[arg(long = "C", allow_hyphen_values = true)]
        c: String,
        /// Extension vectors e_k, rows separated by `;`.
        #[arg(long, allow_hyphen_values = true)]
        ext: String,
        #[arg(long, default_value_t = 6)]
        smax: i64,
    },
    /// Companion module of gamma over the algebra, with simplicity probes.
    SimpleModule {
        file: PathBuf,
        /// Skew Laurent polynomial in `u` and `x1..xt`.
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        /// Probe elements; random ones are drawn when none are given.
        #[arg(long = "beta", allow_hyphen_values = true)]
        betas: Vec<String>,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        /// Largest absolute exponent in the probe window.
        #[arg(long, default_value_t = 4)]
        bound: usize,
        /// Seed for random probes; falls back to QTORUS_SEED, then 0.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Search for a certified failure of strong holonomicity.
    Holonomy {
        file: PathBuf,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Print a generated example: algebra file on stdout, gamma as a comment.
    Example {
        #[arg(long, default_value_t = 1)]
        t: usize,
        /// One prime per variable, comma separated.
        #[arg(long, default_value = "2")]
        primes: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn seed(flag: Option<u64>) -> Result<u64, String> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var("QTORUS_SEED") {
        Ok(v) => v.trim().parse().map_err(|_| format!("QTORUS_SEED is not an integer: `{v}`")),
        Err(_) => Ok(0),
    }
}

fn run(cli: Cli) -> Result<Outcome, String> {
    match cli.command {
        Command::Algebra { query, file } => {
            let q = match query {
                AlgebraQuery::Check => commands::AlgebraQuery::Check,
                AlgebraQuery::Center => commands::AlgebraQuery::Center,
                AlgebraQuery::Simple => commands::AlgebraQuery::Simple,
                AlgebraQuery::DerivedUnits => commands::AlgebraQuery::DerivedUnits,
            };
            commands::algebra(&file, q)
        }
        Command::Delta { file, principal, certify, bound } => commands::delta(&file, principal, certify.as_deref(), bound),
        Command::Gk { file, bounds } => commands::gk(&file, bounds.searches()),
        Command::Tensor { first, second } => commands::tensor(&first, &second),
        Command::Decompose { file } => commands::decompose(&file),
        Command::Commuting { file, c, ext, smax } => commands::commuting(&file, &c, &ext, smax),
        Command::SimpleModule { file, gamma, betas, samples, bound, seed: s } => {
            commands::simple_module(&file, &gamma, &betas, samples, bound, seed(s)?)
        }
        Command::Holonomy { file, bounds } => commands::holonomy(&file, bounds.searches()),
        Command::Example { t, primes, k, seed: s } => commands::example(t, &primes, k, seed(s)?),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
