use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("operands live in different polynomial rings")]
    MismatchedRings,
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("leading term of the zero polynomial")]
    ZeroPolynomial,
    #[error("the ideal is the unit ideal")]
    UnitIdeal,
    #[error("staircase is infinite; a degree bound is required")]
    InfiniteStaircase,
    #[error("ring is not artinian")]
    NotArtinian,
    #[error("ring is not local: variable {0} is not nilpotent")]
    NotLocal(String),
    #[error("input is not homogeneous for the declared grading: {0}")]
    Inhomogeneous(String),
    #[error("degree bound too small: a generator appears in degree {degree} (limit {limit})")]
    BoundTooSmall { degree: i64, limit: i64 },
    #[error("characteristic zero: the Frobenius functor needs a prime characteristic")]
    CharacteristicZero,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("derivation {0} is not verified on this ring")]
    UnverifiedDerivation(String),
    #[error("candidate ideal is not differential: {0}")]
    NotDifferential(String),
    #[error("candidate ideal does not have finite colength")]
    InfiniteColength,
    #[error("d^2 != 0: {0}")]
    NotAComplex(String),
    #[error("ring is not declared to be a domain")]
    NotDomain,
    #[error("depth is inconclusive within degree bound {bound}")]
    InconclusiveDepth { bound: i64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
