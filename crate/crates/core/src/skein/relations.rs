//! Single skein relations as rewrites of one cobordism into a combination.

use std::collections::BTreeSet;

use crate::frobenius::FrobeniusSystem;

use super::{ColoredCobordism, Component, SkeinError, SurfaceCombination};

fn component(c: &ColoredCobordism, index: usize) -> Result<&Component, SkeinError> {
    c.components().get(index).ok_or_else(|| SkeinError::Rewrite(format!("no component {index}")))
}

/// A closed sphere colored `a` becomes the scalar `ε(a)`.
pub fn sphere_relation(
    sys: &FrobeniusSystem,
    c: &ColoredCobordism,
    index: usize,
) -> Result<SurfaceCombination, SkeinError> {
    let comp = component(c, index)?;
    if !comp.is_closed() || comp.genus != 0 {
        return Err(SkeinError::Rewrite(format!("component {index} is not a sphere")));
    }
    let rest = c.replace_component(index, Vec::new());
    Ok(SurfaceCombination::single(rest, sys.counit(&comp.color)))
}

/// The first of the two pieces produced by cutting a separating neck. The
/// second piece gets the remaining genus and circles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeckSplit {
    pub genus: u32,
    pub inputs: BTreeSet<usize>,
    pub outputs: BTreeSet<usize>,
}

/// Cut a separating neck of a component colored `a`:
/// `S = Σ_i S_1(a·u_i) ⊔ S_2(v_i)`.
pub fn separating_neck_cut(
    sys: &FrobeniusSystem,
    c: &ColoredCobordism,
    index: usize,
    split: &NeckSplit,
) -> Result<SurfaceCombination, SkeinError> {
    let comp = component(c, index)?;
    if split.genus > comp.genus || !split.inputs.is_subset(&comp.inputs) || !split.outputs.is_subset(&comp.outputs) {
        return Err(SkeinError::Rewrite(format!("split does not fit component {index}")));
    }
    let mut out = SurfaceCombination::zero(c.inputs(), c.outputs());
    for (u, v) in sys.delta1() {
        let first = Component {
            inputs: split.inputs.clone(),
            outputs: split.outputs.clone(),
            genus: split.genus,
            color: sys.mul(&comp.color, u),
        };
        let second = Component {
            inputs: comp.inputs.difference(&split.inputs).copied().collect(),
            outputs: comp.outputs.difference(&split.outputs).copied().collect(),
            genus: comp.genus - split.genus,
            color: v.clone(),
        };
        out.add_term(c.replace_component(index, vec![first, second]), sys.ring_one())?;
    }
    Ok(out)
}

/// Cut a nonseparating neck: genus drops by one and the color is multiplied
/// by the handle element `Σ u_i v_i`.
pub fn nonseparating_neck_cut(
    sys: &FrobeniusSystem,
    c: &ColoredCobordism,
    index: usize,
) -> Result<SurfaceCombination, SkeinError> {
    let comp = component(c, index)?;
    if comp.genus == 0 {
        return Err(SkeinError::Rewrite(format!("component {index} has genus 0")));
    }
    let mut out = SurfaceCombination::zero(c.inputs(), c.outputs());
    for (u, v) in sys.delta1() {
        let cut = Component { genus: comp.genus - 1, color: sys.mul(&sys.mul(&comp.color, u), v), ..comp.clone() };
        out.add_term(c.replace_component(index, vec![cut]), sys.ring_one())?;
    }
    Ok(out)
}
