use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid root datum: {0}")]
    InvalidDatum(String),

    #[error("unsupported datum or type label `{0}`")]
    Unsupported(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("weight {0} is not integral")]
    NonIntegral(String),

    #[error("weight {0} is not dominant")]
    NonDominant(String),

    #[error("weight {weight} is outside the zero-orbit regime (needs weight + 2rho antidominant)")]
    OutOfRegime { weight: String },

    #[error("element does not belong to this datum: {0}")]
    DatumMismatch(String),

    #[error("element {0} has nonzero length; expected an element of Omega")]
    NotLengthZero(String),

    #[error("element {0} is not a minimal coset representative")]
    NotMinimal(String),

    #[error("basis table of radius {radius} does not cover {element} (length {length})")]
    InsufficientRadius {
        radius: usize,
        element: String,
        length: usize,
    },

    #[error("parse error: {0}")]
    Parse(String),
}
