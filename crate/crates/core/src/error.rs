use thiserror::Error;

use crate::exactpoly::VarSpace;

/// Errors raised by the exact algebra routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("variable space mismatch: {0:?} vs {1:?}")]
    SpaceMismatch(VarSpace, VarSpace),
    #[error("undefined power: {0}")]
    UndefinedPower(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("operator is not divisible by the requested power of the Laplacian")]
    NotDivisible,
    #[error("invalid trace slots ({0}, {1}) for valency {2}")]
    InvalidSlots(usize, usize, usize),
    #[error("tensor is not trace-free")]
    NotTraceFree,
    #[error("tensor does not have the required symmetry type: {0}")]
    SymmetryType(String),
    #[error("tensor is not a conformal Killing tensor (residual component {0})")]
    NotConformalKilling(String),
    #[error("tensor is not a generalised conformal Killing tensor (residual component {0})")]
    NotGeneralisedConformalKilling(String),
    #[error("action is not realised by an operator of order <= {order}: {detail}")]
    InconsistentAction { order: usize, detail: String },
    #[error("operator does not preserve the ideal generated by r at weight {0}")]
    IdealNotPreserved(String),
    #[error("operator is not homogeneous")]
    NotHomogeneous,
    #[error("dimension not stable: {lower} at degree bound {bound}, {upper} at {next}")]
    Unstable {
        bound: usize,
        lower: usize,
        next: usize,
        upper: usize,
    },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
