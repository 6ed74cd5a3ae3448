use thiserror::Error;

/// Errors produced by field construction, algebra operations and the
/// classification drivers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} requires a finite field")]
    InfiniteField(&'static str),

    #[error("value does not belong to field {0}")]
    FieldMismatch(String),

    #[error("transformation matrix is singular")]
    SingularTransform,

    #[error("algebra is not endo-commutative")]
    NotEndoCommutative,

    #[error("expected an algebra of type {expected}, found {found}")]
    WrongType { expected: String, found: String },

    #[error("{0} is outside the relation's carrier")]
    CarrierViolation(String),

    #[error("relation {relation} is unsupported over {field}")]
    Unsupported { relation: String, field: String },

    #[error("field of order {order} exceeds the size guard ({max})")]
    FieldTooLarge { order: u64, max: u64 },

    #[error("degree bound {bound} exceeds the supported maximum {max}")]
    BoundTooLarge { bound: u32, max: u32 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
