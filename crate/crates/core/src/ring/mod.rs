//! Exact ground-ring arithmetic: multivariate polynomials with rational
//! coefficients whose denominators are restricted to a declared set of primes.

mod descriptor;
mod elem;
mod matrix;

pub use descriptor::RingDescriptor;
pub(crate) use elem::fmt_rational;
pub use elem::{ring_arith, Assignment, Exponents, RingElem, RingOp};
pub use matrix::RingMatrix;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("ring descriptor mismatch: {left} vs {right}")]
    DescriptorMismatch { left: String, right: String },
    #[error("coefficient {coefficient} is not allowed in {ring}")]
    CoefficientDomain { coefficient: String, ring: String },
    #[error("substitution does not assign indeterminate `{0}`")]
    IncompleteSubstitution(String),
    #[error("unknown indeterminate `{0}`")]
    UnknownIndeterminate(String),
    #[error("invalid indeterminate name `{0}`")]
    BadIndeterminate(String),
    #[error("indeterminate `{0}` declared twice")]
    DuplicateIndeterminate(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("exponent vector has length {found}, expected {expected}")]
    ExponentLength { expected: usize, found: usize },
}
