use thiserror::Error;

/// Error type shared by every module of the crate.
///
/// Each variant carries a machine-readable code (see [`Error::code`]) that the
/// command line frontend maps onto a process exit status.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or out-of-range user input (bad root system string, weight of
    /// the wrong rank, non-prime p, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A request that is well-formed but outside what the implementation
    /// covers: size caps, untested rank ranges, exceptional parabolics where
    /// only the standard form is supported.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A cohomology computation whose exact value could not be pinned down
    /// within the configured size cap. Carries the reported bounds.
    #[error("indeterminate: {0}")]
    Indeterminate(String),

    /// An internal consistency check failed (non-integral divided power on an
    /// admissible basis, Gram/Jantzen mismatch, ...). These indicate a bug,
    /// never a bad input.
    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-readable code for structured output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid_input",
            Error::Unsupported(_) => "unsupported",
            Error::Indeterminate(_) => "indeterminate",
            Error::Internal(_) => "internal",
            Error::Io(_) => "io",
        }
    }

    /// Process exit status used by the CLI.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_) => 2,
            Error::Unsupported(_) => 3,
            Error::Indeterminate(_) => 4,
            Error::Internal(_) | Error::Io(_) => 5,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
