use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{source_name}:{line}:{column}: {message}")]
    Parse { source_name: String, line: usize, column: usize, message: String },
    #[error("undeclared symbol `{0}`")]
    UndeclaredSymbol(String),
    #[error("symbol `{0}` is declared in several algebras; write `{0}@k`")]
    AmbiguousSymbol(String),
    #[error("algebra {0} is not declared")]
    UndeclaredAlgebra(u32),
    #[error("algebra {algebra} declares degree {degree}, but the word uses {needed} of its letters")]
    DegreeTooLow { algebra: u32, degree: usize, needed: usize },
    #[error("invalid spec: {0}")]
    Spec(String),
    #[error("invalid argument: {0}")]
    Usage(String),
    #[error(transparent)]
    Engine(#[from] mfree_core::Error),
    #[error("cannot read `{path}`: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub(crate) fn parse(source_name: &str, line: usize, column: usize, message: impl Into<String>) -> Self {
        CliError::Parse { source_name: source_name.to_owned(), line, column, message: message.into() }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
