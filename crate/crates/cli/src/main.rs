//! `kofn3`: state distributions of three-state k-out-of-n:G systems with
//! Markov dependent components.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 unreadable or
//! malformed input, 3 invalid system, 4 method cannot handle the system
//! (size guard or `pgf-uni` with `k1 > k2`).

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use tristate_kofn::document::DocumentError;
use tristate_kofn::Method;

use render::Format;

#[derive(Debug, Parser)]
#[command(name = "kofn3", version, about = "Three-state k-out-of-n:G systems with Markov dependent components")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Pgf,
    PgfUni,
    Subset,
    Brute,
    Mc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Builtin {
    Example1,
    Example2,
    Table1,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the state distribution of a system described in a JSON file.
    Compute {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "pgf")]
        method: MethodArg,
        #[arg(long, default_value_t = Method::DEFAULT_SAMPLES)]
        samples: u64,
        #[arg(long, default_value_t = Method::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Run every applicable backend and compare them pairwise.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        #[arg(long, default_value_t = 200_000)]
        samples: u64,
        #[arg(long, default_value_t = Method::DEFAULT_SEED)]
        seed: u64,
    },
    /// Recompute a built-in published example next to its printed values.
    Table {
        #[arg(value_enum)]
        builtin: Builtin,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Time the backends over a geometric grid of n; prints `method,n,median_ns`.
    Bench {
        #[arg(long, default_value_t = 256)]
        nmax: usize,
        #[arg(long, default_value_t = 5)]
        reps: usize,
    },
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Self {
        let code = match e {
            DocumentError::Parse(_) => 2,
            DocumentError::Invalid { .. } | DocumentError::Shape(_) => 3,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<tristate_kofn::Error> for Failure {
    fn from(e: tristate_kofn::Error) -> Self {
        use tristate_kofn::Error::*;
        let code = match e {
            TooLarge { .. } | WrongStructure { .. } => 4,
            _ => 3,
        };
        Failure::new(code, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute {
            file,
            method,
            samples,
            seed,
            format,
        } => commands::compute(&file, to_method(method, samples, seed), format),
        Command::Verify {
            file,
            tolerance,
            samples,
            seed,
        } => commands::verify(&file, tolerance, samples, seed),
        Command::Table { builtin, format } => commands::table(builtin, format),
        Command::Bench { nmax, reps } => commands::bench(nmax, reps),
    };
    match result {
        Ok(output) => {
            print!("{}", output.text);
            ExitCode::from(output.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn to_method(arg: MethodArg, samples: u64, seed: u64) -> Method {
    match arg {
        MethodArg::Pgf => Method::Pgf,
        MethodArg::PgfUni => Method::PgfUni,
        MethodArg::Subset => Method::Subset,
        MethodArg::Brute => Method::Brute,
        MethodArg::Mc => Method::MonteCarlo { samples, seed },
    }
}
