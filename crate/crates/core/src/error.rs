use thiserror::Error;

/// Every failure a library operation can report.
///
/// The variants mirror the precondition classes the CLI maps onto exit codes:
/// shape problems (`DimensionMismatch`, `EmptyInput`, ...) are input errors, the
/// topological guards (`GysinViolation`, `TorsionEuler`, `NotDivisible`, ...) are
/// precondition violations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("the zero polynomial has no {0}")]
    ZeroPolynomial(&'static str),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("zero vector not allowed: {0}")]
    ZeroVector(&'static str),

    #[error("dual ball is not centrally symmetric: -{0:?} is not a vertex")]
    Asymmetric(Vec<String>),

    #[error("dual ball vertex {0:?} is not integral")]
    NonIntegralVertex(Vec<String>),

    #[error("dual face undefined: the norm of {0:?} vanishes")]
    ZeroNorm(Vec<i64>),

    #[error("no fibered-face annotations present")]
    NoAnnotations,

    #[error("fibered mark {0} does not name a vertex of the dual ball")]
    BadMark(usize),

    #[error("Gysin constraint violated: sigma(e) = {pairing}, expected 0")]
    GysinViolation { pairing: i64 },

    #[error("Euler class is torsion; Betti formulas do not apply (bundle is a product up to a finite cover)")]
    TorsionEuler,

    #[error("torsion flag set but Euler class {0:?} is nonzero")]
    TorsionNotZero(Vec<i64>),

    #[error("pullback of the Euler class {pulled:?} is not divisible by q = {q}")]
    NotDivisible { pulled: Vec<i64>, q: i64 },

    #[error("Euler class is zero; use the product rule instead of averaging")]
    ZeroEuler,

    #[error("invalid cover datum: {0}")]
    InvalidCover(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
