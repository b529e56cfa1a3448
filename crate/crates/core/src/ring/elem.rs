use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{RingDescriptor, RingError};

/// Dense exponent vector, one entry per indeterminate of the descriptor.
pub type Exponents = Vec<u32>;

/// An exact polynomial over a [`RingDescriptor`].
///
/// Terms are kept in a sorted map without zero coefficients, so structural
/// equality is ring equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElem {
    ring: Arc<RingDescriptor>,
    terms: BTreeMap<Exponents, BigRational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
    Neg,
}

/// `ring_arith` with explicit operation tag. `Neg` ignores `y` apart from the
/// descriptor check.
pub fn ring_arith(op: RingOp, x: &RingElem, y: &RingElem) -> Result<RingElem, RingError> {
    match op {
        RingOp::Add => x.try_add(y),
        RingOp::Sub => x.try_sub(y),
        RingOp::Mul => x.try_mul(y),
        RingOp::Neg => {
            x.same_ring(y)?;
            Ok(-x)
        }
    }
}

impl RingElem {
    pub fn zero(ring: &Arc<RingDescriptor>) -> Self {
        Self { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Arc<RingDescriptor>) -> Self {
        Self::from_int(ring, 1)
    }

    pub fn from_int(ring: &Arc<RingDescriptor>, n: i64) -> Self {
        Self::from_bigint(ring, BigInt::from(n))
    }

    pub fn from_bigint(ring: &Arc<RingDescriptor>, n: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !n.is_zero() {
            terms.insert(vec![0; ring.arity()], BigRational::from_integer(n));
        }
        Self { ring: ring.clone(), terms }
    }

    /// A rational constant, rejected if its denominator is not allowed.
    pub fn constant(ring: &Arc<RingDescriptor>, c: BigRational) -> Result<Self, RingError> {
        check_coefficient(ring, &c)?;
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; ring.arity()], c);
        }
        Ok(Self { ring: ring.clone(), terms })
    }

    pub fn var(ring: &Arc<RingDescriptor>, name: &str) -> Result<Self, RingError> {
        let idx = ring.index_of(name).ok_or_else(|| RingError::UnknownIndeterminate(name.to_string()))?;
        let mut exps = vec![0; ring.arity()];
        exps[idx] = 1;
        Ok(Self { ring: ring.clone(), terms: BTreeMap::from([(exps, BigRational::one())]) })
    }

    /// Build from raw terms; zero coefficients are dropped.
    pub fn from_terms(
        ring: &Arc<RingDescriptor>,
        terms: impl IntoIterator<Item = (Exponents, BigRational)>,
    ) -> Result<Self, RingError> {
        let mut out = Self::zero(ring);
        for (exps, c) in terms {
            if exps.len() != ring.arity() {
                return Err(RingError::ExponentLength { expected: ring.arity(), found: exps.len() });
            }
            check_coefficient(ring, &c)?;
            out.add_term(exps, c);
        }
        Ok(out)
    }

    pub fn ring(&self) -> &Arc<RingDescriptor> {
        &self.ring
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value if this is a constant polynomial (zero included).
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    fn add_term(&mut self, exps: Exponents, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub(crate) fn same_ring(&self, other: &Self) -> Result<(), RingError> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(RingError::DescriptorMismatch { left: self.ring.to_string(), right: other.ring.to_string() })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, RingError> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, RingError> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, RingError> {
        self.same_ring(other)?;
        let mut out = Self::zero(&self.ring);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale_int(&self, n: i64) -> Self {
        let n = BigRational::from_integer(BigInt::from(n));
        let mut out = Self::zero(&self.ring);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * &n);
        }
        out
    }

    /// True iff this element is invertible in the ground ring: a nonzero
    /// constant whose numerator and denominator factor over the allowed primes.
    pub fn is_unit(&self) -> bool {
        self.as_constant().is_some_and(|c| {
            !c.is_zero() && self.ring.is_invertible_integer(c.numer()) && self.ring.is_invertible_integer(c.denom())
        })
    }

    /// The inverse of a unit, `None` otherwise.
    pub fn unit_inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let c = self.as_constant()?;
        Some(Self::constant(&self.ring, c.recip()).expect("inverse of a unit stays in the ring"))
    }

    /// Apply the evaluation homomorphism given by `assignment`.
    pub fn substitute(&self, assignment: &Assignment) -> Result<Self, RingError> {
        let values: Vec<&RingElem> = self
            .ring
            .indeterminates()
            .iter()
            .map(|name| assignment.values.get(name).ok_or_else(|| RingError::IncompleteSubstitution(name.clone())))
            .collect::<Result<_, _>>()?;
        let target = &assignment.target;
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut term = Self::constant(target, c.clone())?;
            for (value, &k) in values.iter().zip(e) {
                if k > 0 {
                    term = &term * &value.pow(k);
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }
}

fn check_coefficient(ring: &RingDescriptor, c: &BigRational) -> Result<(), RingError> {
    if ring.is_invertible_integer(c.denom()) {
        Ok(())
    } else {
        Err(RingError::CoefficientDomain { coefficient: c.to_string(), ring: ring.to_string() })
    }
}

/// A ring homomorphism given by the images of the source indeterminates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    target: Arc<RingDescriptor>,
    values: BTreeMap<String, RingElem>,
}

impl Assignment {
    pub fn new(
        target: &Arc<RingDescriptor>,
        values: impl IntoIterator<Item = (String, RingElem)>,
    ) -> Result<Self, RingError> {
        let values: BTreeMap<String, RingElem> = values.into_iter().collect();
        for v in values.values() {
            if v.ring() != target {
                return Err(RingError::DescriptorMismatch { left: target.to_string(), right: v.ring().to_string() });
            }
        }
        Ok(Self { target: target.clone(), values })
    }

    /// The identity on `ring`.
    pub fn identity(ring: &Arc<RingDescriptor>) -> Self {
        let values = ring.indeterminates().iter().map(|n| (n.clone(), RingElem::var(ring, n).unwrap())).collect();
        Self { target: ring.clone(), values }
    }

    pub fn target(&self) -> &Arc<RingDescriptor> {
        &self.target
    }

    pub fn get(&self, name: &str) -> Option<&RingElem> {
        self.values.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &RingElem)> {
        self.values.iter()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&RingElem> for &RingElem {
            type Output = RingElem;
            fn $method(self, rhs: &RingElem) -> RingElem {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<RingElem> for RingElem {
            type Output = RingElem;
            fn $method(self, rhs: RingElem) -> RingElem {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem { ring: self.ring.clone(), terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        -&self
    }
}

pub(crate) fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl RingElem {
    /// Render a monomial with the given names (`h^2*t`); empty string for 1.
    fn fmt_monomial(&self, e: &Exponents) -> String {
        self.ring
            .indeterminates()
            .iter()
            .zip(e)
            .filter(|(_, &k)| k > 0)
            .map(|(n, &k)| if k == 1 { n.clone() } else { format!("{n}^{k}") })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest lexicographic exponent first
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono = self.fmt_monomial(e);
            let neg = c.is_negative();
            let abs = c.abs();
            let body = if mono.is_empty() {
                fmt_rational(&abs)
            } else if abs.is_one() {
                mono
            } else {
                format!("{}*{}", fmt_rational(&abs), mono)
            };
            match (i, neg) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.ring)
    }
}
