use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad input: malformed partitions, invalid parameters, out-of-bound sizes.
    #[error("usage: {0}")]
    Usage(String),
    /// A computation contradicted an expected identity.
    #[error("violation: {0}")]
    Violation(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Violation(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<nfact_core::Error> for CliError {
    fn from(e: nfact_core::Error) -> Self {
        use nfact_core::Error as E;
        match e {
            E::InvalidPartition(_)
            | E::OutOfRange { .. }
            | E::BoundExceeded { .. }
            | E::NotPrime(_)
            | E::Precondition(_) => CliError::Usage(e.to_string()),
            _ => CliError::Violation(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
