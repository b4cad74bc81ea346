use thiserror::Error;

use crate::coarse::HypothesisFailure;

pub type Result<T> = std::result::Result<T, CoarseError>;

#[derive(Debug, Error)]
pub enum CoarseError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },

    #[error("parse error at line {line}, offset {offset}: {message}")]
    Parse {
        line: usize,
        offset: usize,
        message: String,
    },

    #[error("{operation} refuses input of size {size}: limit is {limit}")]
    ScaleGuard {
        operation: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("hypothesis failure: no ({k},1)-centred balanced separator for an independent set of size {}", .0.independent_set.len(), k = .0.k)]
    Hypothesis(Box<HypothesisFailure>),

    #[error("internal assertion failed: {0}")]
    Internal(String),
}

impl CoarseError {
    pub(crate) fn parse(line: usize, offset: usize, message: impl Into<String>) -> Self {
        CoarseError::Parse {
            line,
            offset,
            message: message.into(),
        }
    }
}
