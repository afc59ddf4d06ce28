use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("operation needs a finite field")]
    InfiniteField,
    #[error("parse error at byte {offset}: {msg}")]
    Parse { offset: usize, msg: String },
    #[error("singular linear map")]
    Singular,
    #[error("degree bound too small: {0}")]
    Bound(String),
    #[error("search too large: {0}")]
    SearchTooLarge(String),
    #[error("degenerate point: rank of M is at most one")]
    DegeneratePoint,
    #[error("point is not on the point scheme: M has full rank")]
    NotOnCurve,
    #[error("line lies on the curve")]
    LineOnCurve,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("undetermined: {0}")]
    Undetermined(String),
    #[error("no criterion available: {0}")]
    NoCriterion(String),
}

pub type Result<T> = std::result::Result<T, Error>;
