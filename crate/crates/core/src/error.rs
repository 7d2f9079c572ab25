use thiserror::Error;

use crate::cochordal::Witness;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("Z/{n}Z has a non-cochordal zero-divisor graph; induced matching {witness}")]
    NotCochordal { n: u64, witness: Witness },

    #[error("oracle-scale exceeded: {size} {what} > bound {bound}")]
    ScaleExceeded { what: &'static str, size: u64, bound: u64 },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn too_many_vertices(size: u64, bound: u64) -> Self {
        Error::ScaleExceeded { what: "vertices", size, bound }
    }

    pub(crate) fn overflow(what: &str) -> Self {
        Error::InvalidParameter(format!("{what} overflows 64-bit arithmetic"))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
