//! Bicolored patterns over opaque surface symbols and their state sums.
//!
//! A state assigns a structure pair index to every edge. The tail of an edge
//! collects `u_i`, the head `v_i`, and each component's color is multiplied
//! into its anchor vertex. White vertices are capped off by the counit; the
//! values left on black vertices are expanded in the basis.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::frobenius::{AlgElem, FrobeniusSystem, TensorElem};
use crate::par::Exec;

/// Largest edge count accepted by [`state_sum`].
pub const MAX_EDGES: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("vertex `{0}` is declared twice")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("component of `{0}` has no color")]
    MissingColor(String),
    #[error("component of `{0}` is colored twice")]
    DuplicateColor(String),
    #[error("{edges} edges exceed the limit of {MAX_EDGES}")]
    TooManyEdges { edges: usize },
    #[error("patterns do not share black symbols: {left:?} vs {right:?}")]
    Mismatch { left: Vec<String>, right: Vec<String> },
    #[error("color on `{0}` does not belong to the algebra")]
    ForeignColor(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexKind {
    Black,
    White,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    /// For black vertices this is the surface symbol.
    pub name: String,
    pub kind: VertexKind,
}

/// A bicolored graph: black vertices stand for incompressible surface pieces,
/// white vertices for capped-off pieces, and edges for necks that were cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    vertices: Vec<Vertex>,
    /// Stored orientation `(tail, head)`.
    edges: Vec<(usize, usize)>,
    /// One `(anchor, color)` per connected component.
    colors: Vec<(usize, AlgElem)>,
}

pub(crate) fn components(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut label: Vec<usize> = (0..n).collect();
    fn root(label: &mut [usize], mut x: usize) -> usize {
        while label[x] != x {
            label[x] = label[label[x]];
            x = label[x];
        }
        x
    }
    for &(a, b) in edges {
        let (ra, rb) = (root(&mut label, a), root(&mut label, b));
        label[ra.max(rb)] = ra.min(rb);
    }
    (0..n).map(|v| root(&mut label, v)).collect()
}

impl Pattern {
    pub fn new(
        vertices: Vec<Vertex>,
        edges: Vec<(String, String)>,
        colors: Vec<(String, AlgElem)>,
    ) -> Result<Self, PatternError> {
        let mut index = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.name.clone(), i).is_some() {
                return Err(PatternError::DuplicateVertex(v.name.clone()));
            }
        }
        let lookup = |name: &String| index.get(name).copied().ok_or_else(|| PatternError::UnknownVertex(name.clone()));
        let edges =
            edges.iter().map(|(a, b)| Ok((lookup(a)?, lookup(b)?))).collect::<Result<Vec<_>, PatternError>>()?;
        let comp = components(vertices.len(), &edges);
        let mut colored: BTreeMap<usize, (usize, AlgElem)> = BTreeMap::new();
        for (name, color) in colors {
            let v = lookup(&name)?;
            if colored.insert(comp[v], (v, color)).is_some() {
                return Err(PatternError::DuplicateColor(name));
            }
        }
        let roots: BTreeSet<usize> = comp.iter().copied().collect();
        if let Some(&r) = roots.iter().find(|r| !colored.contains_key(r)) {
            return Err(PatternError::MissingColor(vertices[r].name.clone()));
        }
        Ok(Self { vertices, edges, colors: colored.into_values().collect() })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn colors(&self) -> &[(usize, AlgElem)] {
        &self.colors
    }

    /// Black symbols in sorted order; this is the slot order of state sums.
    pub fn black_symbols(&self) -> Vec<String> {
        let mut out = forget_projection(self);
        out.sort();
        out
    }

    /// The same pattern with edge `k` reversed.
    pub fn reverse_edge(&self, k: usize) -> Self {
        let mut out = self.clone();
        let (a, b) = out.edges[k];
        out.edges[k] = (b, a);
        out
    }

    /// The same pattern with the color of `vertex`'s component anchored at
    /// `vertex` instead.
    pub fn move_anchor(&self, vertex: usize) -> Self {
        let comp = components(self.vertices.len(), &self.edges);
        let mut out = self.clone();
        for (anchor, _) in out.colors.iter_mut() {
            if comp[*anchor] == comp[vertex] {
                *anchor = vertex;
            }
        }
        out
    }

    /// The same graph with every component color replaced by `f(old)`.
    pub fn recolor(&self, mut f: impl FnMut(&AlgElem) -> AlgElem) -> Self {
        let mut out = self.clone();
        for (_, c) in out.colors.iter_mut() {
            *c = f(c);
        }
        out
    }
}

/// Basis-colored black vertices with coefficients. Slot `k` of `terms`
/// colors `symbols[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateSumResult {
    pub symbols: Vec<String>,
    pub terms: TensorElem,
}

impl StateSumResult {
    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }
}

pub fn state_sum(sys: &FrobeniusSystem, p: &Pattern) -> Result<StateSumResult, PatternError> {
    state_sum_with(sys, p, Exec::default())
}

pub fn state_sum_with(sys: &FrobeniusSystem, p: &Pattern, exec: Exec) -> Result<StateSumResult, PatternError> {
    let e = p.edges.len();
    if e > MAX_EDGES {
        return Err(PatternError::TooManyEdges { edges: e });
    }
    for (anchor, c) in &p.colors {
        if c.rank() != sys.rank() || c.coords().iter().any(|x| x.ring() != sys.ring()) {
            return Err(PatternError::ForeignColor(p.vertices[*anchor].name.clone()));
        }
    }
    let mut black: Vec<usize> = (0..p.vertices.len()).filter(|&v| p.vertices[v].kind == VertexKind::Black).collect();
    black.sort_by(|&a, &b| p.vertices[a].name.cmp(&p.vertices[b].name));
    let white: Vec<usize> = (0..p.vertices.len()).filter(|&v| p.vertices[v].kind == VertexKind::White).collect();

    let mut base = vec![sys.unit().clone(); p.vertices.len()];
    for (anchor, c) in &p.colors {
        base[*anchor] = sys.mul(&base[*anchor], c);
    }
    let pairs = sys.delta1();
    let r = pairs.len();
    let states = r.checked_pow(e as u32).expect("state count");

    let evaluate = |k: usize| -> TensorElem {
        let mut values = base.clone();
        let mut rest = k;
        for &(tail, head) in &p.edges {
            let (u, v) = &pairs[rest % r];
            rest /= r;
            values[tail] = sys.mul(&values[tail], u);
            values[head] = sys.mul(&values[head], v);
        }
        let mut scalar = sys.ring_one();
        for &w in &white {
            scalar = &scalar * &sys.counit(&values[w]);
            if scalar.is_zero() {
                return TensorElem::zero(black.len());
            }
        }
        let factors: Vec<&AlgElem> = black.iter().map(|&b| &values[b]).collect();
        TensorElem::pure(sys.ring(), &factors).scale(&scalar)
    };
    let terms = exec.fold_range(
        states,
        || TensorElem::zero(black.len()),
        |mut acc, k| {
            for (slots, c) in evaluate(k).terms() {
                acc.add_term(slots.clone(), c.clone());
            }
            acc
        },
        |a, b| a.add(&b),
    );
    let symbols = black.iter().map(|&b| p.vertices[b].name.clone()).collect();
    Ok(StateSumResult { symbols, terms })
}

/// `K(p1) - K(p2)` for two patterns over the same black symbols.
pub fn tubing_difference(sys: &FrobeniusSystem, p1: &Pattern, p2: &Pattern) -> Result<StateSumResult, PatternError> {
    let (left, right) = (p1.black_symbols(), p2.black_symbols());
    if left != right {
        return Err(PatternError::Mismatch { left, right });
    }
    let a = state_sum(sys, p1)?;
    let b = state_sum(sys, p2)?;
    Ok(StateSumResult { symbols: a.symbols, terms: a.terms.sub(&b.terms) })
}

/// The surface symbols of the black vertices, in declaration order.
pub fn forget_projection(p: &Pattern) -> Vec<String> {
    p.vertices.iter().filter(|v| v.kind == VertexKind::Black).map(|v| v.name.clone()).collect()
}
