use std::fmt;

use thiserror::Error;

/// Position of a token in a `.qid` source text. Line and column are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
    pub offset: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("no convergence after {max_terms} terms: {context}")]
    Convergence { context: String, max_terms: usize },

    #[error("pole: {0}")]
    Pole(String),

    #[error("grid error: {0}")]
    Grid(String),

    #[error("symbol tables differ: {left:?} vs {right:?}")]
    SymbolMismatch { left: Vec<String>, right: Vec<String> },

    #[error("{span}: {message}")]
    Lex { span: SourceSpan, message: String },

    #[error("{span}: expected {}, found {found}", .expected.join(" or "))]
    Parse {
        span: SourceSpan,
        expected: Vec<String>,
        found: String,
    },

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    /// An evaluation error raised inside a function call of the DSL.
    #[error("{span}: {source}")]
    At {
        span: SourceSpan,
        #[source]
        source: Box<Error>,
    },

    #[error("check `{check}`: {source}")]
    Check {
        check: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Strips span and check wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::At { source, .. } | Error::Check { source, .. } => source.root(),
            other => other,
        }
    }

    /// True for failures that a sampler should treat as "pick another point".
    pub fn is_resample(&self) -> bool {
        matches!(self.root(), Error::Pole(_) | Error::Convergence { .. })
    }

    pub(crate) fn convergence(context: impl Into<String>, max_terms: usize) -> Self {
        Error::Convergence {
            context: context.into(),
            max_terms,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
