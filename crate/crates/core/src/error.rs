use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("step budget of {0} pair reductions exceeded")]
    BudgetExceeded(usize),
    #[error("coefficients outside ℚ are not supported here: {0}")]
    NonRational(String),
    #[error("point lies in the base locus of the map")]
    BaseLocus,
    #[error("composition collapses target factor {0} to zero")]
    Collapse(usize),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("expression not reducible (missing rule): {0}")]
    MissingRule(String),
    #[error("pairing is not an integer: {0}")]
    NonIntegral(String),
    #[error("unknown scenario '{name}'; valid names: {valid}")]
    UnknownScenario { name: String, valid: String },
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
