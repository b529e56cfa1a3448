use std::collections::BTreeMap;

use thiserror::Error;

use crate::ring::RingElem;

use super::{AlgElem, FrobeniusSystem, Structure, TensorElem};

/// User-declared degrees of basis symbols (or the quotient generator) and of
/// ground-ring indeterminates. Undeclared names have degree 0.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Grading {
    degrees: BTreeMap<String, i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradingError {
    #[error("system `{0}` declares no grading")]
    Ungraded(String),
    #[error("element {0} is not homogeneous")]
    Inhomogeneous(String),
    #[error("the zero element has no degree")]
    Zero,
}

/// Degree shifts of the structure maps, `None` where a map is not homogeneous.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OperatorDegrees {
    pub product: Option<i64>,
    pub counit: Option<i64>,
    pub coproduct: Option<i64>,
}

impl Grading {
    pub fn new(degrees: impl IntoIterator<Item = (String, i64)>) -> Self {
        Self { degrees: degrees.into_iter().collect() }
    }

    pub fn get(&self, name: &str) -> i64 {
        self.degrees.get(name).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &i64)> {
        self.degrees.iter()
    }
}

/// Collapse a list of term degrees to a single degree if they agree.
fn common(mut degrees: impl Iterator<Item = i64>) -> Result<Option<i64>, ()> {
    let Some(first) = degrees.next() else { return Ok(None) };
    if degrees.all(|d| d == first) {
        Ok(Some(first))
    } else {
        Err(())
    }
}

impl FrobeniusSystem {
    fn grading_or_err(&self) -> Result<&Grading, GradingError> {
        self.grading().ok_or_else(|| GradingError::Ungraded(self.name().to_string()))
    }

    pub fn basis_degree(&self, i: usize) -> Result<i64, GradingError> {
        let g = self.grading_or_err()?;
        Ok(match self.structure() {
            Structure::Quotient { generator, .. } => i as i64 * g.get(generator),
            Structure::Explicit { .. } => g.get(&self.basis_names()[i]),
        })
    }

    fn ring_term_degrees<'a>(&'a self, g: &'a Grading, r: &'a RingElem) -> impl Iterator<Item = i64> + 'a {
        r.terms().map(move |(e, _)| {
            self.ring().indeterminates().iter().zip(e).map(|(n, &k)| g.get(n) * k as i64).sum::<i64>()
        })
    }

    /// Degree of a homogeneous ground-ring element.
    pub fn ring_degree(&self, r: &RingElem) -> Result<i64, GradingError> {
        let g = self.grading_or_err()?;
        common(self.ring_term_degrees(g, r))
            .map_err(|_| GradingError::Inhomogeneous(r.to_string()))?
            .ok_or(GradingError::Zero)
    }

    /// Degree of a homogeneous algebra element.
    pub fn alg_degree(&self, a: &AlgElem) -> Result<i64, GradingError> {
        let g = self.grading_or_err()?;
        let mut degs = Vec::new();
        for (i, c) in a.support() {
            let bd = self.basis_degree(i)?;
            degs.extend(self.ring_term_degrees(g, c).map(|d| d + bd));
        }
        common(degs.into_iter()).map_err(|_| GradingError::Inhomogeneous(self.fmt_alg(a)))?.ok_or(GradingError::Zero)
    }

    pub fn tensor_degree(&self, t: &TensorElem) -> Result<i64, GradingError> {
        let g = self.grading_or_err()?;
        let mut degs = Vec::new();
        for (slots, c) in t.terms() {
            let bd = slots.iter().map(|&s| self.basis_degree(s)).sum::<Result<i64, _>>()?;
            degs.extend(self.ring_term_degrees(g, c).map(|d| d + bd));
        }
        common(degs.into_iter()).map_err(|_| GradingError::Inhomogeneous(self.fmt_tensor(t)))?.ok_or(GradingError::Zero)
    }

    /// Measure the degree shift of `μ`, `ε` and `Δ` on basis elements.
    pub fn operator_degrees(&self) -> Result<OperatorDegrees, GradingError> {
        let n = self.rank();
        let shift = |values: Vec<Result<i64, GradingError>>| -> Option<i64> {
            let mut out = Vec::new();
            for v in values {
                match v {
                    Ok(d) => out.push(d),
                    Err(GradingError::Zero) => {}
                    Err(_) => return None,
                }
            }
            common(out.into_iter()).ok().flatten()
        };
        let mut product = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let base = self.basis_degree(i)? + self.basis_degree(j)?;
                product.push(self.alg_degree(self.mul_basis(i, j)).map(|d| d - base));
            }
        }
        let mut counit = Vec::new();
        let mut coproduct = Vec::new();
        for i in 0..n {
            let base = self.basis_degree(i)?;
            counit.push(self.ring_degree(&self.counit_coords()[i]).map(|d| d - base));
            coproduct.push(self.tensor_degree(self.coproduct_basis(i)).map(|d| d - base));
        }
        Ok(OperatorDegrees { product: shift(product), counit: shift(counit), coproduct: shift(coproduct) })
    }
}
