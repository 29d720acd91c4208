use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("characteristic 2 is not supported (p must be an odd prime)")]
    CharacteristicTwo,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p = {p} exceeds the configured prime bound {bound}")]
    AboveBound { p: u64, bound: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials over different primes ({left} vs {right})")]
    ModulusMismatch { left: u64, right: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriterionError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("p = 3: all the points on V(Q,P) are singular, the superspeciality criterion does not apply")]
    Singular,
    #[error("the 16-monomial criterion needs p > 3, got p = {0}")]
    PrimeTooSmall(u64),
    #[error("expansion too large: p = {p} is above the expansion gate {gate}")]
    ExpansionTooLarge { p: u64, gate: u64 },
    #[error("solution tuple sums to {sum}, expected p - 1 = {expected}")]
    BadTupleSum { sum: u64, expected: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("certificate undefined in characteristic <= 3 (p = {0})")]
    CharacteristicTooSmall(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("brute-force enumeration too large: p = {p} is above the brute gate {gate}")]
    BruteTooLarge { p: u64, gate: u64 },
    #[error("internal inconsistency: p = {p}, count {count} outside the Hasse-Weil interval [{lower}, {upper}]")]
    OutsideHasseWeil {
        p: u64,
        count: u64,
        lower: i64,
        upper: i64,
    },
}

#[derive(Debug, Error)]
pub enum SurveyError {
    #[error("invalid prime range [{min}, {max}] (need 3 <= min <= max)")]
    InvalidRange { min: u64, max: u64 },
    #[error("density scan needs limit >= 5, got {0}")]
    LimitTooSmall(u64),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Criterion(#[from] CriterionError),
    #[error(transparent)]
    Count(#[from] CountError),
    #[error("cache: {0}")]
    Io(#[from] std::io::Error),
    #[error("cache: {0}")]
    Json(#[from] serde_json::Error),
}
