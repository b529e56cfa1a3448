use std::collections::BTreeMap;
use std::sync::Arc;

use crate::ring::{RingDescriptor, RingElem};

use super::AlgElem;

/// Basis index tuple of a pure tensor.
pub type Slots = Vec<usize>;

/// An element of `A^{⊗k}` in the product basis. Arity 0 is the ground ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorElem {
    arity: usize,
    terms: BTreeMap<Slots, RingElem>,
}

impl TensorElem {
    pub fn zero(arity: usize) -> Self {
        Self { arity, terms: BTreeMap::new() }
    }

    pub fn scalar(r: RingElem) -> Self {
        let mut t = Self::zero(0);
        t.add_term(Vec::new(), r);
        t
    }

    pub fn basis(slots: Slots, coeff: RingElem) -> Self {
        let mut t = Self::zero(slots.len());
        t.add_term(slots, coeff);
        t
    }

    pub fn from_alg(a: &AlgElem) -> Self {
        let mut t = Self::zero(1);
        for (i, c) in a.support() {
            t.add_term(vec![i], c.clone());
        }
        t
    }

    /// `a_1 ⊗ ... ⊗ a_k`.
    pub fn pure(ring: &Arc<RingDescriptor>, factors: &[&AlgElem]) -> Self {
        factors.iter().fold(Self::scalar(RingElem::one(ring)), |acc, a| acc.tensor(&Self::from_alg(a)))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Slots, &RingElem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, slots: &[usize]) -> Option<&RingElem> {
        self.terms.get(slots)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, slots: Slots, coeff: RingElem) {
        assert_eq!(slots.len(), self.arity, "tensor term of wrong arity");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(slots) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Self, factor: &RingElem) {
        assert_eq!(self.arity, other.arity, "adding tensors of different arity");
        for (s, c) in &other.terms {
            self.add_term(s.clone(), c * factor);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.arity, other.arity, "adding tensors of different arity");
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(s.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self { arity: self.arity, terms: self.terms.iter().map(|(s, c)| (s.clone(), -c)).collect() }
    }

    pub fn scale(&self, r: &RingElem) -> Self {
        let mut out = Self::zero(self.arity);
        for (s, c) in &self.terms {
            out.add_term(s.clone(), c * r);
        }
        out
    }

    /// Concatenating tensor product `self ⊗ other`.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.arity + other.arity);
        for (s1, c1) in &self.terms {
            for (s2, c2) in &other.terms {
                let mut s = s1.clone();
                s.extend_from_slice(s2);
                out.add_term(s, c1 * c2);
            }
        }
        out
    }

    /// Value of an arity-0 tensor.
    pub fn scalar_value(&self, ring: &Arc<RingDescriptor>) -> RingElem {
        assert_eq!(self.arity, 0, "scalar_value on a tensor of arity {}", self.arity);
        self.terms.get(&Vec::new()).cloned().unwrap_or_else(|| RingElem::zero(ring))
    }

    /// Replace slot `slot` by the tensor `f(basis index)` of arity `out_arity`,
    /// spliced in at the same position.
    pub fn map_slot(&self, slot: usize, out_arity: usize, f: impl Fn(usize) -> TensorElem) -> Self {
        assert!(slot < self.arity);
        let mut out = Self::zero(self.arity - 1 + out_arity);
        for (s, c) in &self.terms {
            let image = f(s[slot]);
            debug_assert_eq!(image.arity, out_arity);
            for (is, ic) in &image.terms {
                let mut ns = Vec::with_capacity(out.arity);
                ns.extend_from_slice(&s[..slot]);
                ns.extend_from_slice(is);
                ns.extend_from_slice(&s[slot + 1..]);
                out.add_term(ns, c * ic);
            }
        }
        out
    }

    /// Reorder slots: output slot `k` takes input slot `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.arity);
        let mut out = Self::zero(self.arity);
        for (s, c) in &self.terms {
            out.add_term(perm.iter().map(|&p| s[p]).collect(), c.clone());
        }
        out
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(&RingElem) -> RingElem) -> Self {
        let mut out = Self::zero(self.arity);
        for (s, c) in &self.terms {
            out.add_term(s.clone(), f(c));
        }
        out
    }
}

/// Enumerate all basis tuples of length `arity` over `rank` basis elements in
/// lexicographic order.
pub fn basis_tuples(rank: usize, arity: usize) -> impl Iterator<Item = Slots> {
    let total = rank.checked_pow(arity as u32).expect("tensor power too large");
    (0..total).map(move |k| tuple_at(rank, arity, k))
}

/// The `k`-th tuple of [`basis_tuples`].
pub fn tuple_at(rank: usize, arity: usize, mut k: usize) -> Slots {
    let mut slots = vec![0; arity];
    for s in slots.iter_mut().rev() {
        *s = k % rank;
        k /= rank;
    }
    slots
}

/// Mixed-radix index of a basis tuple, inverse of [`basis_tuples`] ordering.
pub fn tuple_index(rank: usize, slots: &[usize]) -> usize {
    slots.iter().fold(0, |acc, &s| acc * rank + s)
}
