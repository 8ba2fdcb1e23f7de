//! Command-line front end for `costas-core`: verification, constructions,
//! enumeration, the census tables, and array-database import.
//!
//! [`run`] parses arguments and returns the text a command would print
//! together with its exit status, so the binary is a thin wrapper and tests
//! can drive every command in-process.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use costas_core::construct::Family;
use thiserror::Error;

mod commands;
pub mod formats;

/// Exit status for success.
pub const EXIT_OK: i32 = 0;
/// Exit status when an input fails verification.
pub const EXIT_FAIL: i32 = 1;
/// Exit status for usage, parse, and parameter errors.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] costas_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        CliError::Parse {
            line,
            message: message.into(),
        }
    }
}

/// What a command printed and how it exited.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    /// Pretty-printed JSON with a fixed key order.
    Machine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Array,
    Cube,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Join {
    AllPairs,
    ClassReduced,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Pair {
    Ab,
    Ac,
    Bc,
}

#[derive(Debug, Parser)]
#[command(name = "costas", version, about = "Costas arrays and Costas cubes")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads for enumeration and sweeps (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for choosing construction parameters left unspecified.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every array in an array file, or a cube file.
    Verify {
        #[arg(value_enum)]
        target: Target,
        path: PathBuf,
    },
    /// Build an array or cube from a named construction.
    Construct {
        /// w1, g2, w2, g3, cube-g2x3, cube-w2w2g2, cube-g3-i, cube-g3-ii
        family: Family,
        /// "p^m:c0,..,cm", "p^m", or a prime.
        #[arg(long)]
        field: String,
        #[arg(long)]
        phi: Option<String>,
        #[arg(long)]
        rho: Option<String>,
        #[arg(long)]
        psi: Option<String>,
        /// Column shift for w1.
        #[arg(long)]
        c: Option<u64>,
    },
    /// Count cube classes of one order by joining pairs of arrays.
    Enumerate {
        #[arg(long)]
        order: usize,
        /// Complete list of Costas arrays of this order.
        #[arg(long)]
        arrays_file: Option<PathBuf>,
        #[arg(long)]
        emit_representatives: bool,
        #[arg(long, value_enum, default_value_t = Join::AllPairs)]
        join: Join,
    },
    /// Reproduce the cube census (1) or the construction counts (2).
    Tables {
        #[arg(long)]
        table: u8,
        #[arg(long)]
        max_order: Option<usize>,
        /// Construction-table totals are computed up to this order and
        /// taken from published counts above it.
        #[arg(long, default_value_t = 10)]
        census_limit: usize,
    },
    /// The distinct arrays occurring as projections of a cube's orbit.
    SdSet { path: PathBuf },
    /// Canonical forms, class sizes, and construction labels.
    Classify {
        #[arg(value_enum)]
        target: Target,
        path: PathBuf,
    },
    /// Projections of a cube, or a cube rebuilt from two projections.
    Project {
        path: PathBuf,
        /// Read two arrays and rebuild the cube they are projections of.
        #[arg(long, value_enum)]
        from_pair: Option<Pair>,
    },
    /// Validate an array database and store a normalized copy.
    Import {
        path: PathBuf,
        #[arg(long)]
        expect_order: Option<usize>,
        /// Defaults to the input path with ".normalized" appended.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                Output {
                    stderr: text,
                    code,
                    ..Output::default()
                }
            } else {
                Output {
                    stdout: text,
                    code,
                    ..Output::default()
                }
            }
        }
    }
}

pub fn execute(cli: &Cli) -> Output {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        builder = builder.num_threads(n);
    }
    let pool = match builder.build() {
        Ok(pool) => pool,
        Err(e) => {
            return error_output(&CliError::Usage(format!(
                "cannot start worker threads: {e}"
            )))
        }
    };
    pool.install(|| commands::dispatch(cli))
        .unwrap_or_else(|e| error_output(&e))
}

fn error_output(e: &CliError) -> Output {
    Output {
        stderr: format!("error: {e}\n"),
        code: EXIT_USAGE,
        ..Output::default()
    }
}

pub(crate) fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub(crate) fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}
