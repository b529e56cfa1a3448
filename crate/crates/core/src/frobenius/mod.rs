//! Free Frobenius systems of finite rank: structure maps, axiom checks, dual
//! bases, twisting and coefficient-induced specialization.

mod builtin;
mod element;
mod grading;
mod ops;
mod render;
mod system;
mod tensor;

pub use builtin::{barnatan, barnatan_over, gadnaot, gadnaot_over, group, group_over, rank_two, universal};
pub use element::AlgElem;
pub use grading::{Grading, GradingError, OperatorDegrees};
pub use ops::ElementMapper;
pub(crate) use render::fmt_alg_named;
pub(crate) use system::quotient_table;
pub use system::{make_system, Axiom, FrobeniusSystem, Structure, SystemSpec};
pub use tensor::{basis_tuples, tuple_at, tuple_index, Slots, TensorElem};

use thiserror::Error;

use crate::ring::RingError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error("{axiom} fails at {}", witnesses.join(", "))]
    Axiom { axiom: Axiom, witnesses: Vec<String> },
    #[error("malformed system: {0}")]
    Shape(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("{0} is not invertible in the algebra")]
    NotInvertible(String),
    #[error("no dual basis: Gram determinant {determinant} is not a unit")]
    NoDualBasis { determinant: String },
}
