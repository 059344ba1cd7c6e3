use std::path::PathBuf;

use thiserror::Error;

use crate::graph::InducedEmbedding;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: vertex {vertex} out of range for n = {n}")]
    VertexRange { line: usize, vertex: usize, n: usize },

    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("graph has {n} vertices, enumeration cap is {cap}")]
    EnumerationCap { n: usize, cap: usize },

    /// The input contains the pattern it was promised to avoid.
    #[error("graph contains an induced {witness}")]
    FreenessViolation { witness: InducedEmbedding },

    #[error("infeasible parameters: {0}")]
    Infeasible(String),

    /// A produced set failed its hitting-set check. Carries the serialized certificate.
    #[error("verification failed: {message}\n{record}")]
    Verification { message: String, record: String },
}

impl Error {
    /// Stable kind tag, used for the `error:<kind>:` prefix on the command line.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::VertexRange { .. } => "range",
            Error::SelfLoop { .. } => "self-loop",
            Error::Io { .. } => "io",
            Error::InvalidArgument(_) => "usage",
            Error::Precondition(_) => "precondition",
            Error::EnumerationCap { .. } => "enumeration-cap",
            Error::FreenessViolation { .. } => "freeness-violation",
            Error::Infeasible(_) => "infeasible",
            Error::Verification { .. } => "verification",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. }
            | Error::VertexRange { .. }
            | Error::SelfLoop { .. }
            | Error::Io { .. }
            | Error::InvalidArgument(_) => 1,
            Error::Precondition(_) | Error::EnumerationCap { .. } | Error::FreenessViolation { .. } => 2,
            Error::Infeasible(_) => 3,
            Error::Verification { .. } => 4,
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }
}
