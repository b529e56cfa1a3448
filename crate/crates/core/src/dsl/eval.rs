use std::sync::Arc;

use num_traits::Zero;

use crate::frobenius::{AlgElem, FrobeniusSystem, TensorElem};
use crate::ring::{RingDescriptor, RingElem};

use super::ast::Expr;
use super::{Diagnostic, Pos};

/// How products of algebra elements are formed while evaluating.
#[derive(Clone, Copy)]
enum Mult<'a> {
    System(&'a FrobeniusSystem),
    Table(&'a [Vec<AlgElem>]),
    /// Basis `1, X, ..., X^{n-1}` with `X^i X^j = X^{i+j}` below degree `n`.
    Truncated,
    /// No products available yet.
    Linear,
}

/// Names and operations visible to an expression: the ground ring's
/// indeterminates plus the basis of an algebra.
#[derive(Clone, Copy)]
pub struct Scope<'a> {
    ring: &'a Arc<RingDescriptor>,
    names: &'a [String],
    unit: &'a AlgElem,
    mult: Mult<'a>,
}

type EResult<T> = Result<T, Diagnostic>;

fn err<T>(pos: Pos, msg: impl Into<String>) -> EResult<T> {
    Err(Diagnostic::error(pos, msg.into()))
}

pub(crate) fn alg_of(t: &TensorElem, ring: &Arc<RingDescriptor>, rank: usize) -> AlgElem {
    let mut coords = vec![RingElem::zero(ring); rank];
    for (s, c) in t.terms() {
        coords[s[0]] = c.clone();
    }
    AlgElem::new(coords)
}

impl<'a> Scope<'a> {
    pub fn of(sys: &'a FrobeniusSystem) -> Self {
        Scope { ring: sys.ring(), names: sys.basis_names(), unit: sys.unit(), mult: Mult::System(sys) }
    }

    pub(crate) fn table(
        ring: &'a Arc<RingDescriptor>,
        names: &'a [String],
        unit: &'a AlgElem,
        table: &'a [Vec<AlgElem>],
    ) -> Self {
        Scope { ring, names, unit, mult: Mult::Table(table) }
    }

    pub(crate) fn linear(ring: &'a Arc<RingDescriptor>, names: &'a [String], unit: &'a AlgElem) -> Self {
        Scope { ring, names, unit, mult: Mult::Linear }
    }

    pub(crate) fn truncated(ring: &'a Arc<RingDescriptor>, names: &'a [String], unit: &'a AlgElem) -> Self {
        Scope { ring, names, unit, mult: Mult::Truncated }
    }

    fn rank(&self) -> usize {
        self.names.len()
    }

    /// Evaluate to a tensor: arity 0 for scalars, 1 for algebra elements.
    pub fn eval(&self, e: &Expr) -> EResult<TensorElem> {
        match e {
            Expr::Int(n, _) => Ok(TensorElem::scalar(RingElem::from_bigint(self.ring, n.clone()))),
            Expr::Var(name, pos) => {
                let ind = self.ring.index_of(name);
                let basis = self.names.iter().position(|b| b == name);
                match (ind, basis) {
                    (Some(_), Some(_)) => err(*pos, format!("`{name}` is both an indeterminate and a basis element")),
                    (Some(_), None) => {
                        Ok(TensorElem::scalar(RingElem::var(self.ring, name).expect("known indeterminate")))
                    }
                    (None, Some(i)) => Ok(TensorElem::basis(vec![i], RingElem::one(self.ring))),
                    (None, None) => err(*pos, format!("unknown name `{name}`")),
                }
            }
            Expr::Neg(a, _) => Ok(self.eval(a)?.neg()),
            Expr::Paren(a) => self.eval(a),
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                let (x, y) = (self.eval(a)?, self.eval(b)?);
                let (x, y) = self.unify(x, y, b.pos())?;
                Ok(if matches!(e, Expr::Add(..)) { x.add(&y) } else { x.sub(&y) })
            }
            Expr::Mul(a, b) => {
                let (x, y) = (self.eval(a)?, self.eval(b)?);
                match (x.arity(), y.arity()) {
                    (0, _) => Ok(y.scale(&x.scalar_value(self.ring))),
                    (_, 0) => Ok(x.scale(&y.scalar_value(self.ring))),
                    (1, 1) => self.mul(&x, &y, b.pos()),
                    (m, n) => err(b.pos(), format!("cannot multiply tensors of arity {m} and {n}")),
                }
            }
            Expr::Div(a, b) => {
                let (x, y) = (self.eval(a)?, self.eval(b)?);
                let inv = (y.arity() == 0)
                    .then(|| y.scalar_value(self.ring).as_constant())
                    .flatten()
                    .filter(|c| !c.is_zero())
                    .and_then(|c| RingElem::constant(self.ring, c.recip()).ok());
                match inv {
                    Some(inv) => Ok(x.scale(&inv)),
                    None => err(b.pos(), format!("cannot divide by `{}` in {}", super::render::expr(b), self.ring)),
                }
            }
            Expr::Pow(a, n, pos) => {
                let x = self.eval(a)?;
                match x.arity() {
                    0 => Ok(TensorElem::scalar(x.scalar_value(self.ring).pow(*n))),
                    1 => {
                        let mut acc = TensorElem::from_alg(self.unit);
                        for _ in 0..*n {
                            acc = self.mul(&acc, &x, *pos)?;
                        }
                        Ok(acc)
                    }
                    k => err(*pos, format!("cannot raise a tensor of arity {k} to a power")),
                }
            }
            Expr::Tensor(factors, _) => {
                let mut out = TensorElem::scalar(RingElem::one(self.ring));
                for f in factors {
                    let x = self.promote(self.eval(f)?, f.pos())?;
                    out = out.tensor(&x);
                }
                Ok(out)
            }
        }
    }

    /// Scalars become multiples of the unit; other tensors must have arity 1.
    fn promote(&self, x: TensorElem, pos: Pos) -> EResult<TensorElem> {
        match x.arity() {
            0 => Ok(TensorElem::from_alg(self.unit).scale(&x.scalar_value(self.ring))),
            1 => Ok(x),
            k => err(pos, format!("expected an algebra element, found a tensor of arity {k}")),
        }
    }

    fn unify(&self, x: TensorElem, y: TensorElem, pos: Pos) -> EResult<(TensorElem, TensorElem)> {
        match (x.arity(), y.arity()) {
            (a, b) if a == b => Ok((x, y)),
            (0, 1) => Ok((self.promote(x, pos)?, y)),
            (1, 0) => Ok((x, self.promote(y, pos)?)),
            (a, b) => err(pos, format!("cannot add tensors of arity {a} and {b}")),
        }
    }

    fn mul(&self, x: &TensorElem, y: &TensorElem, pos: Pos) -> EResult<TensorElem> {
        let (a, b) = (alg_of(x, self.ring, self.rank()), alg_of(y, self.ring, self.rank()));
        let product = match self.mult {
            Mult::System(sys) => sys.mul(&a, &b),
            Mult::Table(table) => {
                let mut out = AlgElem::zero(self.ring, self.rank());
                for (i, ci) in a.support() {
                    for (j, cj) in b.support() {
                        out = &out + &table[i][j].scale(&(ci * cj));
                    }
                }
                out
            }
            Mult::Truncated => {
                let n = self.rank();
                let mut coords = vec![RingElem::zero(self.ring); n];
                for (i, ci) in a.support() {
                    for (j, cj) in b.support() {
                        if i + j >= n {
                            return err(pos, format!("power {} reaches the extension degree {n}", i + j));
                        }
                        coords[i + j] = &coords[i + j] + &(ci * cj);
                    }
                }
                AlgElem::new(coords)
            }
            Mult::Linear => return err(pos, "products of basis elements are not available here"),
        };
        Ok(TensorElem::from_alg(&product))
    }

    /// Evaluate with a required arity; scalars are promoted to arity 1.
    pub fn eval_arity(&self, e: &Expr, arity: usize) -> EResult<TensorElem> {
        let x = self.eval(e)?;
        // `0` is the zero of every arity
        if x.arity() == 0 && x.is_zero() {
            return Ok(TensorElem::zero(arity));
        }
        let x = if arity == 1 { self.promote(x, e.pos())? } else { x };
        if x.arity() != arity {
            return err(e.pos(), format!("expected a tensor of arity {arity}, found arity {}", x.arity()));
        }
        Ok(x)
    }

    pub fn eval_alg(&self, e: &Expr) -> EResult<AlgElem> {
        Ok(alg_of(&self.eval_arity(e, 1)?, self.ring, self.rank()))
    }

    pub fn eval_scalar(&self, e: &Expr) -> EResult<RingElem> {
        Ok(self.eval_arity(e, 0)?.scalar_value(self.ring))
    }

    /// Index of the basis element an expression denotes exactly.
    pub(crate) fn eval_basis(&self, e: &Expr) -> EResult<usize> {
        let a = self.eval_alg(e)?;
        let mut support = a.support();
        match (support.next(), support.next()) {
            (Some((i, c)), None) if c.is_one() => Ok(i),
            _ => err(e.pos(), format!("`{}` is not a basis element", super::render::expr(e))),
        }
    }
}
