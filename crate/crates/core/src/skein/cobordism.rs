use std::collections::{BTreeMap, BTreeSet};

use crate::frobenius::{AlgElem, FrobeniusSystem, GradingError};
use crate::ring::RingElem;

use super::SkeinError;

/// A connected orientable piece of a cobordism. Slots are 0-based: `inputs`
/// index the input circles, `outputs` the output circles.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Component {
    pub inputs: BTreeSet<usize>,
    pub outputs: BTreeSet<usize>,
    pub genus: u32,
    pub color: AlgElem,
}

impl Component {
    pub fn closed(genus: u32, color: AlgElem) -> Self {
        Self { inputs: BTreeSet::new(), outputs: BTreeSet::new(), genus, color }
    }

    pub fn boundary(&self) -> usize {
        self.inputs.len() + self.outputs.len()
    }

    pub fn is_closed(&self) -> bool {
        self.boundary() == 0
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary() as i64
    }
}

/// An abstract cobordism from `inputs` circles to `outputs` circles with
/// colored components, kept in sorted order so equal surfaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredCobordism {
    inputs: usize,
    outputs: usize,
    components: Vec<Component>,
}

fn check_partition(side: &str, n: usize, parts: impl Iterator<Item = usize>) -> Result<(), SkeinError> {
    let mut seen = vec![false; n];
    for slot in parts {
        match seen.get_mut(slot) {
            None => return Err(SkeinError::Partition(format!("{side} circle {} does not exist", slot + 1))),
            Some(true) => return Err(SkeinError::Partition(format!("{side} circle {} is used twice", slot + 1))),
            Some(s) => *s = true,
        }
    }
    match seen.iter().position(|s| !s) {
        Some(k) => Err(SkeinError::Partition(format!("{side} circle {} belongs to no component", k + 1))),
        None => Ok(()),
    }
}

impl ColoredCobordism {
    pub fn new(inputs: usize, outputs: usize, mut components: Vec<Component>) -> Result<Self, SkeinError> {
        check_partition("input", inputs, components.iter().flat_map(|c| c.inputs.iter().copied()))?;
        check_partition("output", outputs, components.iter().flat_map(|c| c.outputs.iter().copied()))?;
        components.sort();
        Ok(Self { inputs, outputs, components })
    }

    /// The empty cobordism from nothing to nothing.
    pub fn empty() -> Self {
        Self { inputs: 0, outputs: 0, components: Vec::new() }
    }

    /// `n` parallel cylinders colored 1.
    pub fn cylinders(sys: &FrobeniusSystem, n: usize) -> Self {
        let components = (0..n)
            .map(|i| Component {
                inputs: BTreeSet::from([i]),
                outputs: BTreeSet::from([i]),
                genus: 0,
                color: sys.unit().clone(),
            })
            .collect();
        Self { inputs: n, outputs: n, components }
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

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.components.iter().map(Component::euler_characteristic).sum()
    }

    /// Side-by-side union; the circles of `other` are numbered after ours.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let shift = |s: &BTreeSet<usize>, by: usize| s.iter().map(|i| i + by).collect();
        let mut components = self.components.clone();
        components.extend(other.components.iter().map(|c| Component {
            inputs: shift(&c.inputs, self.inputs),
            outputs: shift(&c.outputs, self.outputs),
            genus: c.genus,
            color: c.color.clone(),
        }));
        components.sort();
        Self { inputs: self.inputs + other.inputs, outputs: self.outputs + other.outputs, components }
    }

    /// Replace component `index` by `replacement` pieces covering the same circles.
    pub(crate) fn replace_component(&self, index: usize, replacement: Vec<Component>) -> Self {
        let mut components: Vec<Component> =
            self.components.iter().enumerate().filter(|&(k, _)| k != index).map(|(_, c)| c.clone()).collect();
        components.extend(replacement);
        Self::new(self.inputs, self.outputs, components).expect("replacement covers the same circles")
    }
}

/// A formal `R`-linear combination of cobordisms of one signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceCombination {
    inputs: usize,
    outputs: usize,
    terms: BTreeMap<ColoredCobordism, RingElem>,
}

impl SurfaceCombination {
    pub fn zero(inputs: usize, outputs: usize) -> Self {
        Self { inputs, outputs, terms: BTreeMap::new() }
    }

    pub fn single(c: ColoredCobordism, coeff: RingElem) -> Self {
        let mut out = Self::zero(c.inputs, c.outputs);
        out.add_term(c, coeff).expect("signature matches");
        out
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.inputs, self.outputs)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ColoredCobordism, &RingElem)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, c: ColoredCobordism, coeff: RingElem) -> Result<(), SkeinError> {
        if c.signature() != self.signature() {
            return Err(SkeinError::Signature { expected: self.signature(), found: c.signature() });
        }
        if coeff.is_zero() {
            return Ok(());
        }
        match self.terms.get_mut(&c) {
            Some(existing) => {
                *existing = &*existing + &coeff;
                if existing.is_zero() {
                    self.terms.remove(&c);
                }
            }
            None => {
                self.terms.insert(c, coeff);
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SkeinError> {
        let mut out = self.clone();
        for (c, k) in &other.terms {
            out.add_term(c.clone(), k.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, r: &RingElem) -> Self {
        let mut out = Self::zero(self.inputs, self.outputs);
        for (c, k) in &self.terms {
            out.add_term(c.clone(), k * r).expect("same signature");
        }
        out
    }

    /// Apply a rewrite to every term and collect the results linearly.
    pub fn rewrite<F>(&self, mut f: F) -> Result<Self, SkeinError>
    where
        F: FnMut(&ColoredCobordism) -> Result<SurfaceCombination, SkeinError>,
    {
        let mut out = Self::zero(self.inputs, self.outputs);
        for (c, k) in &self.terms {
            out = out.add(&f(c)?.scale(k))?;
        }
        Ok(out)
    }
}

/// `-χ(S) + Σ deg(color)` for a system with declared degrees.
pub fn degree(sys: &FrobeniusSystem, c: &ColoredCobordism) -> Result<i64, GradingError> {
    let mut total = -c.euler_characteristic();
    for comp in &c.components {
        total += sys.alg_degree(&comp.color)?;
    }
    Ok(total)
}
