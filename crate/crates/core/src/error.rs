use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero in the cyclotomic field")]
    DivisionByZero,

    #[error("conductor {from} does not divide {to}")]
    ConductorMismatch { from: u64, to: u64 },

    #[error("conductor {conductor} exceeds the configured maximum {max}")]
    ConductorTooLarge { conductor: u64, max: u64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("unsupported matrix dimension {0}")]
    UnsupportedDimension(usize),

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not triangular")]
    NotTriangular,

    #[error("representation is reducible: {0}")]
    Reducible(String),

    #[error("central element does not act by a scalar")]
    NonScalarCenter,

    #[error("representation does not factor through PSL(2,Z): central scalar is {0}")]
    DoesNotFactor(String),

    #[error("modular-group relation violated: {0}")]
    RelationViolated(String),

    #[error("order of T exceeds cap {0}")]
    OrderExceedsCap(u64),

    #[error("{0} is not invertible modulo {1}")]
    NotInvertible(i64, i64),

    #[error("moduli {0} and {1} are not coprime")]
    NotCoprime(i64, i64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
