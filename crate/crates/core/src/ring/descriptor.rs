use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::RingError;

/// A ground ring `Z[1/p, ...][x_1, ..., x_k]`: polynomials in named
/// indeterminates whose rational coefficients may only have denominators
/// built from the declared primes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingDescriptor {
    indeterminates: Vec<String>,
    denominator_primes: BTreeSet<u64>,
}

impl RingDescriptor {
    pub fn new<I, S, P>(indeterminates: I, denominator_primes: P) -> Result<Arc<Self>, RingError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
        P: IntoIterator<Item = u64>,
    {
        let indeterminates: Vec<String> = indeterminates.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for name in &indeterminates {
            let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(RingError::BadIndeterminate(name.clone()));
            }
            if !seen.insert(name.as_str()) {
                return Err(RingError::DuplicateIndeterminate(name.clone()));
            }
        }
        let denominator_primes: BTreeSet<u64> = denominator_primes.into_iter().collect();
        if let Some(&p) = denominator_primes.iter().find(|&&p| !is_prime(p)) {
            return Err(RingError::NotPrime(p));
        }
        Ok(Arc::new(Self { indeterminates, denominator_primes }))
    }

    /// The integers.
    pub fn integers() -> Arc<Self> {
        Arc::new(Self { indeterminates: Vec::new(), denominator_primes: BTreeSet::new() })
    }

    /// `Z[x_1, ..., x_k]` with integer coefficients.
    pub fn polynomial<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Arc<Self>, RingError> {
        Self::new(names, [])
    }

    pub fn indeterminates(&self) -> &[String] {
        &self.indeterminates
    }

    pub fn denominator_primes(&self) -> &BTreeSet<u64> {
        &self.denominator_primes
    }

    pub fn arity(&self) -> usize {
        self.indeterminates.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.indeterminates.iter().position(|n| n == name)
    }

    /// True iff `n` factors (up to sign) over the allowed denominator primes.
    pub fn is_invertible_integer(&self, n: &BigInt) -> bool {
        if n.is_zero() {
            return false;
        }
        let mut rest = n.abs();
        for &p in &self.denominator_primes {
            let p = BigInt::from(p);
            loop {
                let (q, r) = rest.div_rem(&p);
                if !r.is_zero() {
                    break;
                }
                rest = q;
            }
        }
        rest.is_one()
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z")?;
        if !self.denominator_primes.is_empty() {
            let inv: Vec<String> = self.denominator_primes.iter().map(|p| format!("1/{p}")).collect();
            write!(f, "[{}]", inv.join(","))?;
        }
        if !self.indeterminates.is_empty() {
            write!(f, "[{}]", self.indeterminates.join(","))?;
        }
        Ok(())
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
