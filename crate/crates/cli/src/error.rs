use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error(transparent)]
    Core(#[from] bicount::Error),
    #[error("methods disagree: {message}")]
    Disagreement { message: String, diagnostics: serde_json::Value },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Format { .. } | CliError::Argument(_) => 2,
            CliError::Core(e) => match e {
                bicount::Error::NoGeneralLine | bicount::Error::NotGeneral(_) => 3,
                e if e.is_numeric() => 4,
                e if e.is_invalid_system() => 2,
                bicount::Error::InvalidSpec(_) | bicount::Error::ZeroPolynomial => 2,
                _ => 1,
            },
            CliError::Disagreement { .. } => 5,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.exit_code() {
            2 => "invalid_system",
            3 => "no_general_line",
            4 => "numeric_failure",
            5 => "method_disagreement",
            _ => "internal",
        }
    }

    pub fn diagnostics(&self) -> Option<&serde_json::Value> {
        match self {
            CliError::Disagreement { diagnostics, .. } => Some(diagnostics),
            _ => None,
        }
    }
}
