//! The `rascal` command line. [`run`] is the whole program; `main` only wires
//! it to the process streams and exit code.

mod commands;
mod config;

use std::ffi::OsString;
use std::io::{self, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rascal_core::{Error, Limits, Method, Pattern};

pub use config::{GridConfig, GridRun, DEFAULT_GRID_CONFIG};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "rascal",
    version,
    about = "Rascal numbers: values, enumeration, bijections and identity checks"
)]
pub struct Cli {
    #[command(flatten)]
    pub caps: Caps,
    #[command(subcommand)]
    pub command: Command,
}

/// Resource caps. `RASCAL_MAX_CELLS` sets the cell and item caps first.
#[derive(Debug, Args)]
pub struct Caps {
    /// Longest binary word any brute-force path may touch
    #[arg(long, global = true)]
    pub max_word_len: Option<usize>,
    /// Longest ascent sequence that may be generated
    #[arg(long, global = true)]
    pub max_ascseq_len: Option<usize>,
    /// Most items a listing or grid may hold
    #[arg(long, global = true)]
    pub max_items: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print R^(j)_{n,k}
    Value {
        #[arg(allow_negative_numbers = true)]
        n: i64,
        #[arg(allow_negative_numbers = true)]
        k: i64,
        #[arg(long, default_value_t = 1)]
        j: u32,
        #[arg(long, default_value = "closed")]
        method: Method,
    },
    /// Print rows 0..=N_MAX of the triangle
    Triangle {
        n_max: usize,
        #[arg(long, default_value_t = 1)]
        j: u32,
        #[arg(long, value_enum, default_value_t = TriangleFormat::Table)]
        format: TriangleFormat,
        /// First index of a b-file
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        offset: i64,
    },
    /// List or count a combinatorial family
    Enumerate {
        #[command(subcommand)]
        family: Family,
    },
    /// Check identities over parameter grids
    Verify {
        /// An identity name, or `all`
        name: String,
        /// Use each identity's standard grid up to this row instead of the pinned one
        #[arg(long)]
        n_max: Option<i64>,
        /// Only left sides computed by exhaustive enumeration
        #[arg(long, conflicts_with = "formula")]
        oracle: bool,
        /// Only left sides computed from the closed form
        #[arg(long)]
        formula: bool,
        #[arg(long, value_enum, default_value_t = ReportFormat::Table)]
        format: ReportFormat,
        /// Include wall-clock times (output is then not reproducible)
        #[arg(long)]
        timing: bool,
    },
    /// Exhaustively check a bijection or involution
    Bijection {
        /// One of sym, strip, ascseq, subset, divider, ratio, altbin, genalt
        name: String,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 3)]
        j_max: u32,
        #[arg(long)]
        j: Option<u32>,
        #[arg(long, default_value_t = 4)]
        r_max: u32,
        #[arg(long, value_enum, default_value_t = ReportFormat::Table)]
        format: ReportFormat,
    },
    /// Tabulate E(n,k,j) = R_{n,k} R_{n-2,k-1} - R_{n-1,k} R_{n-1,k-1} for j = 0..=J_MAX
    Etable {
        n_max: usize,
        j_max: u32,
        #[arg(long, value_enum, default_value_t = EtableFormat::Table)]
        format: EtableFormat,
    },
    /// List the registered identities
    Identities,
}

#[derive(Debug, Subcommand)]
pub enum Family {
    /// Binary words of length n with k ones (any number if omitted) and at most j ascents
    Words {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 1)]
        j: u32,
        #[command(flatten)]
        listing: Listing,
    },
    /// Ascent sequences of length n
    Ascseq {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        listing: Listing,
    },
    /// Ascent sequences of length n avoiding every pattern, optionally with exactly k ascents
    Avoiders {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        patterns: Vec<Pattern>,
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        listing: Listing,
    },
    /// k-subsets of {1..n} meeting {1..n-k} in at most j elements
    Subsets {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        j: u32,
        #[command(flatten)]
        listing: Listing,
    },
}

#[derive(Debug, Args)]
pub struct Listing {
    /// Print only the number of items
    #[arg(long)]
    pub count_only: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TriangleFormat {
    Table,
    Json,
    Csv,
    Bfile,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EtableFormat {
    Table,
    Json,
    Csv,
}

#[derive(Debug)]
pub(crate) enum CliError {
    Core(Error),
    Io(io::Error),
    Json(serde_json::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Json(e)
    }
}

/// Exit code for an error surfaced by the library.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceLimit { .. } => EXIT_LIMIT,
        Error::UnknownIdentity(_) | Error::UnknownBijection(_) | Error::Parse { .. } | Error::DomainViolation(_) => {
            EXIT_USAGE
        }
        Error::Overflow(_) | Error::InexactDivision { .. } => EXIT_FAILURE,
    }
}

fn limits(caps: &Caps) -> Result<Limits, Error> {
    let mut limits = Limits::from_env()?;
    if let Some(v) = caps.max_word_len {
        limits.max_word_len = v;
    }
    if let Some(v) = caps.max_ascseq_len {
        limits.max_ascseq_len = v;
    }
    if let Some(v) = caps.max_items {
        limits.max_items = v;
        limits.max_cells = v;
    }
    Ok(limits)
}

/// Parses `args` (including the program name) and runs the command, writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let outcome = limits(&cli.caps)
        .map_err(CliError::from)
        .and_then(|limits| commands::dispatch(&cli, &limits, out));
    match outcome {
        Ok(code) => code,
        Err(CliError::Core(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
        Err(CliError::Json(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
    }
}
