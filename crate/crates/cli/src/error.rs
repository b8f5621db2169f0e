use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{path}: {inner}")]
    InFile { path: String, inner: Box<CliError> },
    #[error("domain mismatch: {0}")]
    Domain(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] doctrina_core::Error),
}

impl CliError {
    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        CliError::Parse {
            line,
            message: message.into(),
        }
    }

    pub fn in_file(self, path: &str) -> Self {
        CliError::InFile {
            path: path.to_string(),
            inner: Box::new(self),
        }
    }

    /// Process exit status: 2 parse, 3 unsatisfiable, 4 budget, 5 domain or
    /// weight mismatch, 6 unilateral decision on a non-definite-Horn doctrine.
    pub fn exit_code(&self) -> u8 {
        use doctrina_core::Error as E;
        match self {
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Usage(_) => 2,
            CliError::InFile { inner, .. } => inner.exit_code(),
            CliError::Domain(_) => 5,
            CliError::Core(e) => match e {
                E::Syntax { .. }
                | E::EmptyInput
                | E::InvalidAtomName(_)
                | E::UnknownAtom(_)
                | E::MissingAtom(_)
                | E::InvalidNumber(_)
                | E::OutOfRange(_) => 2,
                E::Unsatisfiable | E::BadWitness => 3,
                E::ClauseBudget { .. }
                | E::EnumerationCap { .. }
                | E::Overflow
                | E::IterationBound(_) => 4,
                E::DomainMismatch { .. } | E::WeightSum(_) => 5,
                E::NotDefiniteHorn => 6,
                _ => 1,
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
