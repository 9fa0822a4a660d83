//! Library half of the `gradcan` binary: the graph DSL, expression parsers and
//! the subcommands, so tests can drive them without spawning a process.

pub mod commands;
pub mod dsl;
pub mod error;
pub mod expr;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::{run, Output};
pub use dsl::{parse_graph, render, GraphDoc};
pub use error::{CliError, CliResult, Location};
pub use expr::{parse_element, parse_matrix, parse_shifts};

/// Exit code for an input error.
pub const EXIT_INPUT: u8 = 2;
/// Exit code under `--strict` when some verdict is Unknown.
pub const EXIT_UNKNOWN: u8 = 1;

#[derive(Debug, Parser)]
#[command(name = "gradcan", version, about = "Graded cancellation properties of Leavitt path algebras and graded matrix rings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide every property for the algebra of a graph.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Exit with 1 when any verdict is Unknown.
        #[arg(long)]
        strict: bool,
    },
    /// Graded matrix decomposition of a finite no-exit graph.
    Decompose {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print the canonical form of a graph file.
    Fmt { file: PathBuf },
    /// Decide a property of a graded matrix ring.
    Matrix(MatrixArgs),
    /// Brute-force search over a finite window; prints one JSON record per element.
    Oracle(OracleArgs),
    /// Normal form and homogeneous components of an element.
    Eval {
        file: PathBuf,
        #[arg(short = 'e', long = "expr")]
        expr: String,
        #[arg(long, default_value = "q")]
        field: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Args)]
pub struct RingArgs {
    #[arg(long)]
    pub n: usize,
    /// `k` or `laurent:M`.
    #[arg(long, default_value = "k")]
    pub base: String,
    /// Comma-separated; defaults to all zeros.
    #[arg(long, allow_hyphen_values = true)]
    pub shifts: Option<String>,
    /// `q` or `fp:P`.
    #[arg(long, default_value = "q")]
    pub field: String,
}

#[derive(Debug, Args)]
pub struct MatrixArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    #[command(subcommand)]
    pub action: MatrixAction,
}

#[derive(Debug, Subcommand)]
pub enum MatrixAction {
    Check {
        property: CheckProperty,
        /// List a witness for every homogeneous element in the window.
        #[arg(long)]
        witnesses: bool,
        /// Witness for this one element instead.
        #[arg(long)]
        element: Option<String>,
        /// Degree window `N` or `LO:HI`.
        #[arg(long, env = "GL_ORACLE_WINDOW", default_value = "2", allow_hyphen_values = true)]
        window: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckProperty {
    Clean,
    Exchange,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleProperty {
    Clean,
    Exchange,
    Lift,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    pub property: OracleProperty,
    /// Degree window `N` or `LO:HI`.
    #[arg(long, env = "GL_ORACLE_WINDOW", default_value = "2", allow_hyphen_values = true)]
    pub window: String,
    /// Exponent window `LO:HI` for Laurent entries.
    #[arg(long, allow_hyphen_values = true)]
    pub exponents: Option<String>,
    /// Bound on the powers tried in the exchange search.
    #[arg(long)]
    pub powers: Option<usize>,
    /// Only this element.
    #[arg(long)]
    pub element: Option<String>,
    /// Generators of the graded right ideal, for `lift`.
    #[arg(long)]
    pub ideal: Vec<String>,
}
