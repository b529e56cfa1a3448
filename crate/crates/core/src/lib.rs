//! Exact symbolic engine for Frobenius-algebra 2D TQFTs and surface skein
//! calculus.
//!
//! * [`ring`]: exact ground-ring polynomials.
//! * [`frobenius`]: verified free Frobenius systems and their structure maps.
//! * [`tqft`]: words of elementary colored cobordisms and the linear maps they induce.
//! * [`skein`]: colored abstract cobordisms, skein relations and tensor normal forms.
//! * [`pattern`]: bicolored patterns and their state sums.
//! * [`dsl`]: the `.skn` text format and JSON result emission.

pub mod dsl;
pub mod frobenius;
pub mod gen;
pub mod par;
pub mod pattern;
pub mod ring;
pub mod skein;
pub mod tqft;

pub use frobenius::{AlgElem, FrobeniusSystem, TensorElem};
pub use par::Exec;
pub use ring::{RingDescriptor, RingElem};
