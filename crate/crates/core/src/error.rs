use thiserror::Error;

use crate::report::VerificationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("bicharacter table entry ({0}, {1}) is zero")]
    ZeroTableEntry(usize, usize),

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("invalid algebra:\n{0}")]
    InvalidAlgebra(VerificationReport),

    #[error("invalid representation:\n{0}")]
    InvalidModule(VerificationReport),

    #[error("not a cocycle:\n{0}")]
    NotACocycle(VerificationReport),

    #[error("deformation fails the color Jacobi identity:\n{0}")]
    DefectiveDeformation(VerificationReport),

    #[error("inadmissible cochain: {0}")]
    InadmissibleCochain(String),

    #[error("element has filtration degree {found}, expected at most {max}")]
    FiltrationExceeded { found: usize, max: usize },

    #[error("element is not homogeneous: {0}")]
    Inhomogeneous(String),

    #[error("parse error in {context}: {message}")]
    Parse { context: String, message: String },

    #[error("{0}")]
    Json(#[from] serde_json::Error),

    #[error("{0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
