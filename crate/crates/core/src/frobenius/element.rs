use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use crate::ring::{RingDescriptor, RingElem};

/// An element of the algebra, as coordinates over the system's basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgElem {
    coords: Vec<RingElem>,
}

impl AlgElem {
    pub fn new(coords: Vec<RingElem>) -> Self {
        Self { coords }
    }

    pub fn zero(ring: &Arc<RingDescriptor>, rank: usize) -> Self {
        Self { coords: vec![RingElem::zero(ring); rank] }
    }

    pub fn basis(ring: &Arc<RingDescriptor>, rank: usize, i: usize) -> Self {
        let mut out = Self::zero(ring, rank);
        out.coords[i] = RingElem::one(ring);
        out
    }

    pub fn coords(&self) -> &[RingElem] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &RingElem {
        &self.coords[i]
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(RingElem::is_zero)
    }

    pub fn scale(&self, r: &RingElem) -> Self {
        Self { coords: self.coords.iter().map(|c| c * r).collect() }
    }

    /// Nonzero coordinates as `(basis index, coefficient)`.
    pub fn support(&self) -> impl Iterator<Item = (usize, &RingElem)> {
        self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn map_coords(&self, f: impl FnMut(&RingElem) -> RingElem) -> Self {
        Self { coords: self.coords.iter().map(f).collect() }
    }
}

impl Add<&AlgElem> for &AlgElem {
    type Output = AlgElem;
    fn add(self, rhs: &AlgElem) -> AlgElem {
        assert_eq!(self.rank(), rhs.rank(), "algebra elements of different rank");
        AlgElem { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect() }
    }
}

impl Sub<&AlgElem> for &AlgElem {
    type Output = AlgElem;
    fn sub(self, rhs: &AlgElem) -> AlgElem {
        assert_eq!(self.rank(), rhs.rank(), "algebra elements of different rank");
        AlgElem { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &AlgElem {
    type Output = AlgElem;
    fn neg(self) -> AlgElem {
        AlgElem { coords: self.coords.iter().map(|c| -c).collect() }
    }
}
