use thiserror::Error;

/// Failures surfaced by the library. Arithmetic on values from the same
/// field never fails except for division by zero.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("extension modulus {0} is not monic irreducible of the declared degree")]
    ReducibleModulus(String),
    #[error("malformed field spec `{0}`")]
    BadFieldSpec(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields")]
    MixedFieldContexts,
    #[error("operation requires a finite field")]
    InfiniteField,
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("expected degree {expected}, found {found}")]
    WrongDegree { expected: usize, found: i64 },
    #[error("polynomial is not monic")]
    NonMonic,
    #[error("matrix is not square")]
    NotSquare,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("polynomial {0} is not irreducible")]
    NotIrreducible(String),
    #[error("subspace is not stable under the endomorphism")]
    NotStable,
    #[error("invalid symplectic pair: {0}")]
    InvalidPair(String),
    #[error("sequence is not non-increasing")]
    NotNonIncreasing,
    #[error("no invertible point found in the solution space")]
    SearchExhausted,
    #[error("construction invariant violated: {0}")]
    ConstructionInvariantViolated(String),
    #[error("instance was decided NO; no witness exists")]
    DecisionWasNo,
    #[error("dimension {dim} exceeds the brute-force bound {bound}")]
    DimensionBoundExceeded { dim: usize, bound: usize },
    #[error("an explicit list of irreducible polynomials is required over an infinite field")]
    NeedsIrreducibleInventory,
    #[error("operation applies only to the {0} family")]
    WrongCase(&'static str),
    #[error("the selected root difference lies in the base field")]
    DifferenceInBaseField,
    #[error("the two decision routes disagree: {0}")]
    Inconsistent(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("json error: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
