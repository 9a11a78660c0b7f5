use thiserror::Error;

/// Errors surfaced by the library. Most operations are total on valid inputs;
/// the variants here cover contract violations and resource bounds.
#[derive(Error, Debug)]
pub enum ModRepError {
    #[error("field mismatch: operands live over different fields")]
    FieldMismatch,
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("module side mismatch: {0}")]
    SideMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("group too large: order {order} exceeds bound {bound}")]
    GroupTooLarge { order: usize, bound: usize },
    #[error("not a p-group for p = {p}")]
    NotPGroup { p: u64 },
    #[error("not a subgroup of the ambient group")]
    NotSubgroup,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("reducible modulus polynomial")]
    ReducibleModulus,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal search failed (signals a bug): {0}")]
    SearchFailure(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("resource bound exceeded: {0}")]
    ResourceBound(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, ModRepError>;
