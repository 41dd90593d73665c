use std::path::PathBuf;

use thiserror::Error;

pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] betadyn::Error),

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{path}: {source}")]
    Csv { path: PathBuf, source: csv::Error },

    #[error("{0}")]
    Usage(String),

    #[error("cannot start worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    /// Process exit status; every library error kind has its own code from 10 up.
    pub fn exit_code(&self) -> i32 {
        use betadyn::Error as E;
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io { .. } => 3,
            CliError::Csv { .. } => 4,
            CliError::Pool(_) => 5,
            CliError::Core(e) => match e {
                E::InvalidBase(_) => 10,
                E::Parse { .. } => 11,
                E::InvalidDigits(_) => 12,
                E::RootAtOrBelowOne => 13,
                E::BoundaryUndecidable { .. } => 14,
                E::NotAdmissible => 15,
                E::NotFull => 16,
                E::NotSelfAdmissible => 17,
                E::CapExceeded { .. } => 18,
                E::ZeroTerminalDigit { .. } => 19,
                E::BlockTooShort { .. } => 20,
                E::EmptyLevelSet { .. } => 21,
                E::InvalidTarget(_) => 22,
                E::ScheduleOverflow { .. } => 23,
                E::InsufficientDepth { .. } => 24,
                E::EmptyCylinder => 25,
                E::SimpleParryEndpoint(_) => 26,
                E::PrefixOrderViolation { .. } => 27,
                E::InsufficientSample { .. } => 28,
                E::DomainError(_) => 29,
                E::WitnessFailed(_) => 30,
            },
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
