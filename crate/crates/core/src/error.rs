use thiserror::Error;

use crate::params::PretzelKind;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter list is empty")]
    EmptyParams,
    #[error("zero parameter: the diagram is a connected sum; see 2-bridge classifications")]
    ZeroParameter,
    #[error("cannot parse parameter list: {0}")]
    Parse(String),
    #[error("P({0}) is a link, not a knot")]
    NotAKnot(String),
    #[error("operation requires a Type 2 or Type 3 knot, got {0}")]
    WrongKind(PretzelKind),
    #[error("incidence matrix is singular mod 2 (even determinant)")]
    SingularMod2,
    #[error("Euler number vanishes for P({0})")]
    ZeroEulerNumber(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
