//! File formats, JSON run reports and the command-line front end for
//! `transdom-core`.

pub mod cli;
pub mod commands;
pub mod format;
pub mod gen;
pub mod report;

pub use format::ParseError;
pub use report::RunReport;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    /// Malformed input file or invalid arguments.
    pub const PARSE: i32 = 2;
    /// Instance exceeds a solver ceiling.
    pub const TOO_LARGE: i32 = 3;
    /// A search ran out of its node budget.
    pub const BUDGET: i32 = 4;
    /// An internal invariant failed, e.g. a permutation could not be read
    /// back from a transitive 2-coloring.
    pub const INVARIANT: i32 = 5;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {error}")]
    Parse { path: String, error: ParseError },
    #[error("points on lines {first_line} and {second_line} share coordinate {axis}; rerun with --relabel to replace coordinates by ranks")]
    GeneralPosition {
        axis: usize,
        first_line: usize,
        second_line: usize,
    },
    #[error("{path}: {error}")]
    Io { path: String, error: std::io::Error },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] transdom_core::Error),
    #[error("invariant failure: {0}")]
    Invariant(String),
}

impl From<ParseError> for CliError {
    fn from(error: ParseError) -> Self {
        CliError::Parse {
            path: "<input>".into(),
            error,
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use transdom_core::Error as E;
        match self {
            CliError::Parse { .. }
            | CliError::GeneralPosition { .. }
            | CliError::Io { .. }
            | CliError::Usage(_) => exit::PARSE,
            CliError::Invariant(_) => exit::INVARIANT,
            CliError::Core(e) => match e {
                E::InstanceTooLarge { .. } => exit::TOO_LARGE,
                E::BudgetExhausted { .. } | E::SearchFailed { .. } => exit::BUDGET,
                E::Invariant(_) | E::NonConvergence { .. } => exit::INVARIANT,
                _ => exit::PARSE,
            },
        }
    }
}
