use thiserror::Error;

use crate::field::Elem;

/// Errors raised by tower construction and element arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("degrees must be positive (n = {n}, m = {m})")]
    InvalidDegree { n: u32, m: u32 },
    #[error("{which} polynomial {poly:?} is not a monic irreducible of degree {degree}")]
    Reducible {
        which: &'static str,
        poly: Vec<u32>,
        degree: u32,
    },
    #[error("field size {p}^{exp} exceeds the size limit {limit}")]
    SizeLimitExceeded { p: u32, exp: u32, limit: u64 },
    #[error("elements belong to different towers")]
    MixedTowers,
    #[error("division by zero")]
    DivisionByZero,
    #[error("element {0:?} is not in the subfield F_q")]
    NotInSubfield(Elem),
    #[error("code {code} is out of range for a field with {size} elements")]
    CodeOutOfRange { code: u64, size: u32 },
}

/// Errors raised by polynomial and additive-map operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("additive map is not invertible")]
    NotInvertible,
    #[error("linearized exponent index {index} is outside [0, {limit})")]
    IndexOutOfRange { index: u32, limit: u32 },
    #[error("coefficient {0:?} is not in F_q")]
    CoefficientNotInSubfield(Elem),
    #[error("malformed polynomial text {text:?}: {reason}")]
    Parse { text: String, reason: String },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Errors raised by the symmetric functions of the Frobenius conjugates.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmError {
    #[error("index {j} out of range for {kind} (valid: {lo}..={hi})")]
    IndexOutOfRange {
        kind: &'static str,
        j: u64,
        lo: u64,
        hi: u64,
    },
    #[error("unknown symmetric function {0:?} (expected tr, lambda:<j> or mu:<j>)")]
    UnknownKind(String),
}

/// Errors raised by the construction builders and predicates.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("index hypothesis fails: gcd({j}, {modulus}) != 1")]
    GcdViolation { j: u64, modulus: u64 },
    #[error("image escapes the domain: G({x:?}) = {value:?}")]
    ImageEscape { x: Elem, value: Elem },
    #[error("linear translator requires a nonzero alpha")]
    ZeroAlpha,
    #[error("L1 is not a permutation of the field")]
    NotPermutationL1,
    #[error("L is not a permutation of the field")]
    NotPermutationL,
    #[error("f is not surjective onto F_q")]
    NotSurjectiveF,
    #[error("alpha = {alpha:?} is not a {a:?}-linear translator of f")]
    NotTranslator { alpha: Elem, a: Elem },
    #[error("a sum of terms needs at least one term")]
    EmptyInstance,
    #[error("table has {got} entries, expected {expected}")]
    TableSize { got: usize, expected: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Symm(#[from] SymmError),
    #[error(transparent)]
    Field(#[from] FieldError),
}
