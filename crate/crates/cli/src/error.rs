use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed input: unreadable file, bad TOML, bad inline argument.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{0}")]
    Usage(String),

    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    /// The input parsed but violates a precondition or invariant.
    #[error("{0}")]
    Domain(String),

    #[error("invalid manifold data:\n{}", .0.join("\n"))]
    Invalid(Vec<String>),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) | CliError::Invalid(_) => 2,
            CliError::Parse { .. } | CliError::Usage(_) | CliError::Io { .. } => 3,
        }
    }
}

impl From<swcalc::Error> for CliError {
    fn from(e: swcalc::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}
