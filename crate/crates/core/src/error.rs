use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("not an element: {0}")]
    NotInField(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("GF(p^{m}) is not a subfield of GF(p^{n})")]
    NotASubfield { m: u32, n: u32 },
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("zero polynomial not allowed: {0}")]
    ZeroPolynomial(&'static str),
    #[error("{0}")]
    InvalidArgument(String),
    #[error("{what} needs {needed} items, budget is {budget}")]
    BudgetExceeded { what: &'static str, needed: u64, budget: u64 },
    #[error("point is not on the surface")]
    PointNotOnSurface,
    #[error("unmet precondition: {0}")]
    Precondition(String),
}
