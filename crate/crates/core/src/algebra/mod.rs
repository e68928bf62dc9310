//! Exact dense linear algebra over ℤ, ℚ and GF(p).
//!
//! Everything here is value-based: operations take `&self` and return new
//! matrices. Determinants of integer and rational matrices go through
//! fraction-free Bareiss elimination; field determinants and ranks use
//! pivoted Gaussian elimination.

mod det;
mod matrix;
mod scalar;

use thiserror::Error;

pub use det::det_ai_bj;
pub use matrix::{ExactMatrix, ExactVector};
pub use scalar::{Domain, Modulus, Scalar, Value, MAX_MODULUS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("value {value} is not an element of the {domain} domain")]
    NotInDomain { value: String, domain: Domain },
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is not below 2^31")]
    ModulusTooLarge(u64),
    #[error("{op}: dimension mismatch {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("domain mismatch: {left} vs {right}")]
    DomainMismatch { left: Domain, right: Domain },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("index {0} is both the target and a source")]
    SourceIsTarget(usize),
    #[error("index {0} appears twice in the target list")]
    DuplicateTarget(usize),
    #[error("{op} is not supported over the {domain} domain")]
    UnsupportedDomain { op: &'static str, domain: Domain },
    #[error("dimension must be at least 1")]
    EmptyDimension,
    #[error("row {row} has {len} entries, expected {expected}")]
    RaggedRows { row: usize, len: usize, expected: usize },
}
