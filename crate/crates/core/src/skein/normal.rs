use crate::frobenius::{tuple_at, FrobeniusSystem, TensorElem};
use crate::par::Exec;
use crate::ring::RingElem;
use crate::tqft::LinearMap;

use super::{ColoredCobordism, Component, SkeinError, SurfaceCombination};

/// A class in `Cob(r, s) ≅ A^{⊗(r+s)}`: the first `r` tensor factors color
/// disks capping the input circles, the last `s` the output circles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeinElement {
    inputs: usize,
    outputs: usize,
    tensor: TensorElem,
}

impl SkeinElement {
    pub fn new(inputs: usize, outputs: usize, tensor: TensorElem) -> Result<Self, SkeinError> {
        if tensor.arity() != inputs + outputs {
            return Err(SkeinError::Arity { expected: inputs + outputs, found: tensor.arity() });
        }
        Ok(Self { inputs, outputs, tensor })
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.inputs, self.outputs)
    }

    pub fn tensor(&self) -> &TensorElem {
        &self.tensor
    }
}

/// `Δ^{(k-1)}(H^g·a)`, or the scalar `ε(H^g·a)` for a closed component.
fn component_tensor(sys: &FrobeniusSystem, comp: &Component) -> TensorElem {
    let colored = sys.mul(&sys.pow(sys.handle(), comp.genus), &comp.color);
    match comp.boundary() {
        0 => TensorElem::scalar(sys.counit(&colored)),
        k => sys.iterated_coproduct(&colored, k),
    }
}

fn cobordism_tensor(sys: &FrobeniusSystem, c: &ColoredCobordism) -> TensorElem {
    let r = c.inputs();
    let mut acc = TensorElem::scalar(sys.ring_one());
    let mut positions = Vec::with_capacity(r + c.outputs());
    for comp in c.components() {
        acc = acc.tensor(&component_tensor(sys, comp));
        positions.extend(comp.inputs.iter().copied());
        positions.extend(comp.outputs.iter().map(|j| r + j));
        if acc.is_zero() {
            return TensorElem::zero(r + c.outputs());
        }
    }
    let mut perm = vec![0; positions.len()];
    for (m, &p) in positions.iter().enumerate() {
        perm[p] = m;
    }
    acc.permute(&perm)
}

pub fn normal_form(sys: &FrobeniusSystem, c: &SurfaceCombination) -> SkeinElement {
    normal_form_with(sys, c, Exec::default())
}

/// Evaluate every term by the closed component formula and sum.
pub fn normal_form_with(sys: &FrobeniusSystem, c: &SurfaceCombination, exec: Exec) -> SkeinElement {
    let (r, s) = c.signature();
    let terms: Vec<_> = c.terms().collect();
    let parts = exec.map_range(terms.len(), |k| cobordism_tensor(sys, terms[k].0).scale(terms[k].1));
    let tensor = parts.iter().fold(TensorElem::zero(r + s), |acc, t| acc.add(t));
    SkeinElement { inputs: r, outputs: s, tensor }
}

pub fn cobordism_normal_form(sys: &FrobeniusSystem, c: &ColoredCobordism) -> SkeinElement {
    SkeinElement { inputs: c.inputs(), outputs: c.outputs(), tensor: cobordism_tensor(sys, c) }
}

pub fn skein_equal(sys: &FrobeniusSystem, a: &SurfaceCombination, b: &SurfaceCombination) -> Result<bool, SkeinError> {
    if a.signature() != b.signature() {
        return Err(SkeinError::Signature { expected: a.signature(), found: b.signature() });
    }
    Ok(normal_form(sys, a) == normal_form(sys, b))
}

fn pairing(sys: &FrobeniusSystem, left: &[usize], right: &[usize]) -> Option<RingElem> {
    let mut acc = sys.ring_one();
    for (&i, &j) in left.iter().zip(right) {
        let g = sys.gram(i, j);
        if g.is_zero() {
            return None;
        }
        acc = &acc * g;
    }
    Some(acc)
}

/// `g ∘ f`: glue the outputs of `f` to the inputs of `g`, pairing the capping
/// disks through the counit.
pub fn compose(sys: &FrobeniusSystem, g: &SkeinElement, f: &SkeinElement) -> Result<SkeinElement, SkeinError> {
    if f.outputs != g.inputs {
        return Err(SkeinError::Compose { outputs: f.outputs, inputs: g.inputs });
    }
    let (r, m) = (f.inputs, f.outputs);
    let mut tensor = TensorElem::zero(r + g.outputs);
    for (fs, fc) in f.tensor.terms() {
        for (gs, gc) in g.tensor.terms() {
            if let Some(p) = pairing(sys, &fs[r..], &gs[..m]) {
                let mut slots = fs[..r].to_vec();
                slots.extend_from_slice(&gs[m..]);
                tensor.add_term(slots, &(&p * fc) * gc);
            }
        }
    }
    Ok(SkeinElement { inputs: r, outputs: g.outputs, tensor })
}

/// Disjoint union: inputs of `f` then `g`, followed by outputs of `f` then `g`.
pub fn monoidal_product(f: &SkeinElement, g: &SkeinElement) -> SkeinElement {
    let (r1, s1, r2, s2) = (f.inputs, f.outputs, g.inputs, g.outputs);
    let joined = f.tensor.tensor(&g.tensor);
    let mut perm = Vec::with_capacity(r1 + s1 + r2 + s2);
    perm.extend(0..r1);
    perm.extend(r1 + s1..r1 + s1 + r2);
    perm.extend(r1..r1 + s1);
    perm.extend(r1 + s1 + r2..r1 + s1 + r2 + s2);
    SkeinElement { inputs: r1 + r2, outputs: s1 + s2, tensor: joined.permute(&perm) }
}

/// Normal form of `n` parallel cylinders.
pub fn identity(sys: &FrobeniusSystem, n: usize) -> SkeinElement {
    cobordism_normal_form(sys, &ColoredCobordism::cylinders(sys, n))
}

/// The induced map `a' ↦ Σ Π ε(a_i a'_i)·b` on the input disks.
pub fn to_linear_map(sys: &FrobeniusSystem, x: &SkeinElement) -> LinearMap {
    let (n, r, s) = (sys.rank(), x.inputs, x.outputs);
    let columns = Exec::default().map_range(n.pow(r as u32), |k| {
        let col = tuple_at(n, r, k);
        let mut out = TensorElem::zero(s);
        for (slots, c) in x.tensor.terms() {
            if let Some(p) = pairing(sys, &slots[..r], &col) {
                out.add_term(slots[r..].to_vec(), &p * c);
            }
        }
        out
    });
    LinearMap::new(n, r, s, columns)
}

/// Inverse of [`to_linear_map`]: `Σ v_{i_1}⊗…⊗v_{i_r} ⊗ φ(u_{i_1}⊗…⊗u_{i_r})`.
pub fn from_linear_map(sys: &FrobeniusSystem, map: &LinearMap) -> SkeinElement {
    let pairs = sys.delta1();
    let r = map.domain();
    let mut tensor = TensorElem::zero(r + map.codomain());
    for k in 0..pairs.len().pow(r as u32) {
        let idx = tuple_at(pairs.len(), r, k);
        let us: Vec<_> = idx.iter().map(|&i| &pairs[i].0).collect();
        let vs: Vec<_> = idx.iter().map(|&i| &pairs[i].1).collect();
        let image = map.apply(&TensorElem::pure(sys.ring(), &us));
        tensor = tensor.add(&TensorElem::pure(sys.ring(), &vs).tensor(&image));
    }
    SkeinElement { inputs: r, outputs: map.codomain(), tensor }
}
