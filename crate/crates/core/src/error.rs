use thiserror::Error;

/// Errors raised by the algebraic constructions in this crate.
///
/// Verification failures are never errors; they are recorded as failed
/// entries of a [`crate::report::VerificationReport`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("order not representable in this context: {order} does not divide {modulus}")]
    OrderNotRepresentable { order: u64, modulus: u64 },

    #[error("order of zero undefined")]
    OrderOfZero,

    #[error("division by zero")]
    DivisionByZero,

    #[error("unsupported conductor {0}")]
    Conductor(u64),

    #[error("criterion requires nontrivial root of unity (got d = {0})")]
    TrivialRoot(u64),

    #[error("binomial index out of range: k = {k} exceeds n = {n}")]
    BinomialRange { n: u64, k: u64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid ramification datum: {0}")]
    Ramification(String),

    #[error("use singleton classes {{g^k}} directly for the infinite cyclic group")]
    InfiniteClasses,

    #[error("quiver kind mismatch: {0}")]
    KindMismatch(String),

    #[error("degree of the zero element is undefined")]
    DegreeOfZero,

    #[error("invalid automorphism parameter: {0}")]
    Automorphism(String),

    #[error("q has infinite order; {0}")]
    InfiniteOrder(String),

    #[error("invalid family parameters: {0}")]
    Descriptor(String),

    #[error("identification is generator-level only for deformed families")]
    GeneratorLevelOnly,

    #[error("word or monomial outside the family: {0}")]
    OutsideFamily(String),

    #[error("no antipode: {0}")]
    NoAntipode(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
