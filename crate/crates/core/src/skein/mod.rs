//! Colored abstract cobordisms, skein relations and their tensor normal forms.

mod cobordism;
mod normal;
mod relations;

pub use cobordism::{degree, ColoredCobordism, Component, SurfaceCombination};
pub use normal::{
    cobordism_normal_form, compose, from_linear_map, identity, monoidal_product, normal_form, normal_form_with,
    skein_equal, to_linear_map, SkeinElement,
};
pub use relations::{nonseparating_neck_cut, separating_neck_cut, sphere_relation, NeckSplit};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkeinError {
    #[error("signature mismatch: expected ({}, {}), found ({}, {})", expected.0, expected.1, found.0, found.1)]
    Signature { expected: (usize, usize), found: (usize, usize) },
    #[error("cannot compose: {outputs} output circles against {inputs} input circles")]
    Compose { outputs: usize, inputs: usize },
    #[error("tensor of arity {found} where {expected} was expected")]
    Arity { expected: usize, found: usize },
    #[error("boundary is not partitioned: {0}")]
    Partition(String),
    #[error("cannot rewrite: {0}")]
    Rewrite(String),
}
