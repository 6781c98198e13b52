//! File formats, built-in example groups and modules, the verification
//! suites and JSON reports for the `symvert` command line tool.

pub mod checks;
pub mod commands;
pub mod io;
pub mod report;
pub mod specht;
pub mod suite;

use symvert::Error;

/// Fixed default seed.
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("bound exceeded: {0}")]
    Bound(String),
    #[error("unknown suite '{0}'")]
    UnknownSuite(String),
    #[error("{0}")]
    Core(#[from] Error),
}

impl CliError {
    /// 2 for unreadable input, 3 for infeasible bounds, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Io(_) | CliError::UnknownSuite(_) => 2,
            CliError::Bound(_) => 3,
            CliError::Core(e) => match e {
                Error::Parse(_) | Error::Dim(_) | Error::NotRep(_) | Error::NotInvariant | Error::Field(_) => 2,
                Error::Bound(_) => 3,
                _ => 1,
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
