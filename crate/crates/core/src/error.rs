use thiserror::Error;

/// Every failure mode of the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("valuation of zero is undefined")]
    ValuationOfZero,
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("tuple is identically zero")]
    AllZeroTuple,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("zero rational function")]
    ZeroFunction,
    #[error("polynomial is not irreducible: {0}")]
    NotIrreducible(String),
    #[error("not a canonical irreducible polynomial: {0}")]
    NotCanonicalIrreducible(String),
    #[error("multivariate factorization is not supported")]
    UnsupportedMultivariateFactorization,
    #[error("degree {degree} exceeds the supported cap {cap}")]
    UnsupportedDegree { degree: usize, cap: usize },
    #[error("constant polynomial has no roots")]
    ConstantPolynomial,
    #[error("{0} variables exceed the quadrature dimension cap 3")]
    DimensionTooLarge(usize),
    #[error("Northcott enumeration requires lambda > 0")]
    NorthcottRequiresPositiveLambda,
    #[error("polynomial has degree zero in {0}")]
    DegreeZeroInVariable(String),
    #[error("gap a must be positive")]
    NonpositiveGap,
    #[error("resultant of two constants is degenerate")]
    DegenerateResultant,
    #[error("sections do not intersect properly (resultant vanishes)")]
    ImproperIntersection,
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("sections do not form a basis")]
    NotABasis,
    #[error("section vanishes at the point")]
    SectionVanishesAtPoint,
    #[error("factor list inconsistent with input: {0}")]
    InconsistentFactorization(String),
    #[error("division by zero coefficient at byte {offset}")]
    DivisionByZeroCoefficient { offset: usize },
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
