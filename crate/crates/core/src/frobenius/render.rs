use num_traits::Signed;

use crate::ring::{fmt_rational, RingElem};

use super::{AlgElem, FrobeniusSystem, TensorElem};

/// `coeff*body` with the usual sign and parenthesis conventions.
/// Returns the term with its sign split off.
fn scaled(coeff: &RingElem, body: &str) -> (bool, String) {
    if let Some(c) = coeff.as_constant() {
        let neg = c.is_negative();
        let abs = c.abs();
        let text = if abs == num_rational::BigRational::from_integer(1.into()) {
            body.to_string()
        } else {
            format!("{}*{body}", fmt_rational(&abs))
        };
        return (neg, text);
    }
    if coeff.num_terms() == 1 {
        let s = coeff.to_string();
        return match s.strip_prefix('-') {
            Some(rest) => (true, format!("{rest}*{body}")),
            None => (false, format!("{s}*{body}")),
        };
    }
    (false, format!("({coeff})*{body}"))
}

fn join(terms: Vec<(bool, String)>) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (neg, text)) in terms.into_iter().enumerate() {
        match (i, neg) {
            (0, false) => out.push_str(&text),
            (0, true) => {
                out.push('-');
                out.push_str(&text);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&text);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&text);
            }
        }
    }
    out
}

impl FrobeniusSystem {
    /// Render an element as a DSL expression, highest basis index first.
    pub fn fmt_alg(&self, a: &AlgElem) -> String {
        fmt_alg_named(a, self.basis_names())
    }

    /// Render a tensor as a sum of `coeff*<b_1,...,b_k>` terms. Arity 0
    /// renders as the scalar and arity 1 as an algebra element.
    pub fn fmt_tensor(&self, t: &TensorElem) -> String {
        match t.arity() {
            0 => return t.scalar_value(self.ring()).to_string(),
            1 => {
                let mut coords = vec![self.ring_zero(); self.rank()];
                for (slots, c) in t.terms() {
                    coords[slots[0]] = c.clone();
                }
                return self.fmt_alg(&AlgElem::new(coords));
            }
            _ => {}
        }
        let terms = t
            .terms()
            .map(|(slots, c)| {
                let names: Vec<&str> = slots.iter().map(|&s| self.basis_names()[s].as_str()).collect();
                scaled(c, &format!("<{}>", names.join(",")))
            })
            .collect();
        join(terms)
    }
}

/// [`FrobeniusSystem::fmt_alg`] with explicit basis names.
pub(crate) fn fmt_alg_named(a: &AlgElem, names: &[String]) -> String {
    let mut terms = Vec::new();
    for (i, c) in a.support().collect::<Vec<_>>().into_iter().rev() {
        let name = &names[i];
        if name == "1" {
            // unit basis element: the coefficient is spliced in, its leading sign becomes the separator
            let s = c.to_string();
            terms.push(match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            });
        } else {
            terms.push(scaled(c, name));
        }
    }
    join(terms)
}
