//! Command-line front end for `dfc-core`: evaluate fractional sums on CSV or
//! builtin inputs, dump kernel weights, and run the identity checks.
//!
//! Exit codes are part of the interface: 0 all good, 1 a verification
//! failed, 2 usage error, 3 bad input data.

mod args;
mod run;
mod table;

use std::fmt;

pub use args::{parse_args, AnyConfig, Builtin, Command, Format, Op, RunConfig, Source};
pub use run::{execute, run_eval, run_verify, run_weights};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DATA: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    /// Produced by clap itself (unknown flag, `--help`, ...).
    Clap(clap::Error),
    Usage(String),
    Data(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Clap(e) => e.exit_code(),
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Data(_) => EXIT_DATA,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Clap(e) => write!(f, "{e}"),
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Data(msg) => write!(f, "data error: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<dfc_core::Error> for CliError {
    fn from(e: dfc_core::Error) -> Self {
        CliError::Data(e.to_string())
    }
}
