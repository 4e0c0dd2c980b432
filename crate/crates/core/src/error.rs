use thiserror::Error;

use crate::graph::VertexId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("{0} and {1} are not adjacent")]
    NotAnEdge(VertexId, VertexId),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("graph has {n} vertices, above the configured cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("graph is not connected")]
    Disconnected,
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Domain(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
