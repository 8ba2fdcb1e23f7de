use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("permutation must have at least one entry")]
    EmptyPermutation,
    #[error("value {value} at position {position} is outside 1..={order}")]
    ValueOutOfRange {
        position: usize,
        value: usize,
        order: usize,
    },
    #[error("value {value} occurs more than once (not a bijection)")]
    RepeatedValue { value: usize },

    #[error("cube row {row}: {component} = {value} is outside 1..={order}")]
    CubeEntryOutOfRange {
        row: usize,
        component: char,
        value: usize,
        order: usize,
    },
    #[error("cube has more than one 1 entry in row i = {row}")]
    DuplicateRow { row: usize },
    #[error("cube has no 1 entry in row i = {row}")]
    MissingRow { row: usize },
    #[error("cube has more than one 1 entry with {component} = {value}")]
    DuplicateCoordinate { component: char, value: usize },

    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("not a Costas cube")]
    NotCostasCube,

    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field size {0} exceeds the supported limit of 2^20")]
    FieldTooLarge(u64),
    #[error("modulus has degree {got}, expected {expected}")]
    ModulusDegree { expected: usize, got: usize },
    #[error("modulus is reducible over GF({p})")]
    ReducibleModulus { p: u32 },
    #[error("element encoding {encoding} is not in a field of size {q}")]
    ElementOutOfRange { encoding: u64, q: u32 },
    #[error("zero has no multiplicative inverse")]
    InverseOfZero,
    #[error("discrete logarithm of zero is undefined")]
    LogOfZero,
    #[error("{0} is not a primitive element")]
    NotPrimitive(String),
    #[error("{0}")]
    Inadmissible(String),
    #[error("construction requires a prime field, got GF({p}^{m})")]
    NotPrimeField { p: u32, m: u32 },
    #[error("construction requires q > 3, got q = {0}")]
    FieldTooSmall(u32),
    #[error("cannot parse field specification {input:?}: {reason}")]
    FieldSyntax { input: String, reason: String },
    #[error("cannot parse field element {input:?}: {reason}")]
    ElementSyntax { input: String, reason: String },
    #[error("exponent {exponent} escaped its range 1..={max} in {context}")]
    ExponentRange {
        exponent: u64,
        max: u64,
        context: &'static str,
    },

    #[error(
        "order {order} exceeds the in-process limit of {limit}; supply an array database instead"
    )]
    OrderLimit { order: usize, limit: usize },
    #[error("array set is incomplete: {0}")]
    IncompleteArraySet(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
