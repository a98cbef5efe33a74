use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid operator spec: {0}")]
    InvalidSpec(String),

    #[error("unknown preset `{name}` (known: {known})")]
    UnknownPreset { name: String, known: String },

    #[error("unknown function `{name}` (known: {known})")]
    UnknownFunction { name: String, known: String },

    #[error("unsupported moment: {0}")]
    UnsupportedMoment(String),

    #[error("degenerate rate fit: {0}")]
    DegenerateFit(String),

    #[error("Voronovskaja analysis requires sequence limits l0, l1 for `{0}`")]
    MissingLimits(String),

    #[error("invalid expression `{expr}`: {reason}")]
    Expression { expr: String, reason: String },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("numerical assertion failed: {0}")]
    Assertion(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn spec(msg: impl Into<String>) -> Self {
        Error::InvalidSpec(msg.into())
    }
}
