//! Command-line front end for `hombias`.
//!
//! [`run`] parses arguments, executes one subcommand on a rayon pool sized by
//! `--threads`, and returns the exit code together with the bytes destined for
//! standard output and standard error. Failures produce a single JSON line on
//! standard error: `{"error": kind, "message": text, "exit_code": code}`.

mod commands;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use report::Format;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILURE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "hombias",
    version,
    about = "Approximate ±1 homomorphisms on finite groups"
)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Also write the output to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Minimal nontrivial irrep dimension and the spectral bias bounds.
    Bound {
        spec: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Coset-extension construction with random or enumerated coset signs.
    Construct(ConstructArgs),
    /// Maximum-bias search over a family of balanced functions.
    Search(SearchArgs),
    /// Checks the Fourier identities on random balanced functions.
    FourierVerify {
        spec: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
    /// Character table via the class algebra.
    Chartab {
        spec: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Bounds, constructions and search on the alternating group A_n.
    AnGap(AnGapArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TransversalArg {
    Involutive,
    Greedy,
}

#[derive(Debug, Args)]
struct ConstructArgs {
    spec: String,
    /// Use the parity subgroup S_{n-2} of A_n; the spec must be `A<n>`.
    #[arg(
        long,
        conflicts_with = "subgroup",
        required_unless_present = "subgroup"
    )]
    n: Option<usize>,
    /// `;`-separated generators (ids or cycles); φ is the first nontrivial sign on them.
    #[arg(long)]
    subgroup: Option<String>,
    /// Transversal choice; `involutive` needs `--n`.
    #[arg(long, value_enum)]
    transversal: Option<TransversalArg>,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Average T exactly over every coset sign pattern.
    #[arg(long)]
    exact_signs: bool,
    /// Include the best draw's function as a ±1 array.
    #[arg(long)]
    dump_f: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Exhaustive,
    Class,
    Coset,
    Local,
}

#[derive(Debug, Args)]
struct SearchArgs {
    spec: String,
    #[arg(long, value_enum, default_value_t = StrategyArg::Exhaustive)]
    strategy: StrategyArg,
    /// Subgroup generators for the coset strategy (default: trivial subgroup).
    #[arg(long)]
    subgroup: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    restarts: usize,
    #[arg(long, default_value_t = 100_000)]
    max_steps: usize,
    #[arg(long)]
    dump_f: bool,
}

#[derive(Debug, Args)]
struct AnGapArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 500)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random local-search restarts besides the best construction draw.
    #[arg(long, default_value_t = 4)]
    restarts: usize,
    #[arg(long, default_value_t = 100_000)]
    max_steps: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(code: i32, kind: &str, message: &str) -> Outcome {
        let line = json!({ "error": kind, "message": message, "exit_code": code });
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("{line}\n"),
        }
    }
}

fn failure(e: &hombias::Error) -> Outcome {
    let code = if e.is_usage() {
        EXIT_USAGE
    } else {
        EXIT_FAILURE
    };
    Outcome::error(code, e.kind(), &e.to_string())
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome {
                    code: EXIT_OK,
                    stdout: e.to_string(),
                    stderr: String::new(),
                };
            }
            let text = e.to_string();
            let first = text
                .lines()
                .next()
                .unwrap_or("")
                .trim_start_matches("error: ");
            return Outcome::error(EXIT_USAGE, "usage", first);
        }
    };
    let format = match cli.format {
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
    };
    let value = match cli.threads {
        Some(0) => return Outcome::error(EXIT_USAGE, "usage", "--threads must be at least 1"),
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| commands::execute(&cli.command)),
            Err(e) => return Outcome::error(EXIT_FAILURE, "threads", &e.to_string()),
        },
        None => commands::execute(&cli.command),
    };
    let value = match value {
        Ok(v) => v,
        Err(e) => return failure(&e),
    };
    let text = match report::emit(&value, format) {
        Ok(t) => t,
        Err(e) => return Outcome::error(EXIT_FAILURE, "encode", &e),
    };
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &text) {
            return Outcome::error(EXIT_FAILURE, "io", &format!("{}: {e}", path.display()));
        }
    }
    Outcome {
        code: EXIT_OK,
        stdout: text,
        stderr: String::new(),
    }
}
