use thiserror::Error;

use crate::spec::ParseError;

/// Everything a command can fail with, grouped by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags or flag combinations.
    #[error("{0}")]
    Usage(String),
    /// A textual argument did not parse.
    #[error("{what}: {err}")]
    Parse { what: &'static str, err: ParseError },
    /// A JSON input document did not parse.
    #[error("{what}: {message}")]
    Input { what: String, message: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    /// The library rejected the request.
    #[error(transparent)]
    Domain(#[from] galois_quantum::Error),
    /// A field table whose derived entries disagree with its parameters.
    #[error("field table is inconsistent: {0}")]
    InconsistentTable(String),
    /// At least one invariant suite failed.
    #[error("invariant suites failed: {0}")]
    InvariantFailed(String),
}

impl CliError {
    /// Usage errors exit 1, domain errors 2, numeric non-convergence 3.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_)
            | CliError::Parse { .. }
            | CliError::Input { .. }
            | CliError::Io { .. } => 1,
            CliError::Domain(galois_quantum::Error::QuadratureNotConverged { .. }) => 3,
            CliError::Domain(_) | CliError::InconsistentTable(_) | CliError::InvariantFailed(_) => {
                2
            }
        }
    }
}
