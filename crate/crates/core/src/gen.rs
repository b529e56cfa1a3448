//! Seeded random instances for property tests and benchmarks.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::frobenius::{AlgElem, FrobeniusSystem, TensorElem};
use crate::pattern::{components, Pattern, Vertex, VertexKind};
use crate::ring::{RingDescriptor, RingElem};
use crate::skein::{ColoredCobordism, Component};
use crate::tqft::{CobordismWord, Generator};

/// Random polynomial with at most `max_terms` terms of total degree at most
/// `max_degree`; small integer coefficients, occasionally divided by an
/// allowed prime.
pub fn ring_elem<R: Rng>(rng: &mut R, ring: &Arc<RingDescriptor>, max_degree: u32, max_terms: usize) -> RingElem {
    let k = ring.arity();
    let primes: Vec<u64> = ring.denominator_primes().iter().copied().collect();
    let n_terms = rng.random_range(0..=max_terms);
    let terms = (0..n_terms).map(|_| {
        let mut exps = vec![0u32; k];
        if k > 0 {
            let deg = rng.random_range(0..=max_degree);
            for _ in 0..deg {
                exps[rng.random_range(0..k)] += 1;
            }
        }
        let numer: i64 = rng.random_range(-5..=5);
        let denom: u64 =
            if !primes.is_empty() && rng.random_bool(0.25) { primes[rng.random_range(0..primes.len())] } else { 1 };
        (exps, BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    });
    RingElem::from_terms(ring, terms).expect("generated coefficients are in the ring")
}

/// Random algebra element with coordinates from [`ring_elem`].
pub fn alg_elem<R: Rng>(rng: &mut R, sys: &FrobeniusSystem, max_degree: u32, max_terms: usize) -> AlgElem {
    AlgElem::new((0..sys.rank()).map(|_| ring_elem(rng, sys.ring(), max_degree, max_terms)).collect())
}

/// Random well-chained word. Widths stay within `max_width`; colors are drawn
/// from `colors`.
pub fn word<R: Rng>(rng: &mut R, max_width: usize, max_levels: usize, colors: &[AlgElem]) -> CobordismWord {
    let input_width = rng.random_range(0..=max_width);
    word_from(rng, input_width, max_width, max_levels, colors)
}

/// Like [`word`] with a fixed input width.
pub fn word_from<R: Rng>(
    rng: &mut R,
    input_width: usize,
    max_width: usize,
    max_levels: usize,
    colors: &[AlgElem],
) -> CobordismWord {
    let mut width = input_width;
    let mut levels = Vec::new();
    for _ in 0..rng.random_range(0..=max_levels) {
        let mut level = Vec::new();
        let (mut left, mut out) = (width, 0);
        while left > 0 || (out < max_width && rng.random_bool(0.1)) {
            let room = max_width.saturating_sub(out + left);
            let mut options = vec![Generator::Identity];
            if !colors.is_empty() {
                options.push(Generator::Color(colors[rng.random_range(0..colors.len())].clone()));
            }
            if room > 0 {
                options.push(Generator::Unit);
            }
            if left >= 1 {
                options.push(Generator::Counit);
                if room > 0 {
                    options.push(Generator::Comult);
                    options.push(Generator::Comult);
                }
            }
            if left >= 2 {
                options.extend([Generator::Mult, Generator::Mult, Generator::Swap]);
            }
            if left == 0 {
                options = vec![Generator::Unit];
            }
            let g = options.swap_remove(rng.random_range(0..options.len()));
            let (i, o) = g.arity();
            left -= i;
            out += o;
            level.push(g);
        }
        width = out;
        levels.push(level);
    }
    CobordismWord::new(input_width, levels).expect("generated word is well chained")
}

/// Random cobordism `(inputs, outputs)` with at most `max_components`
/// components, genus at most `max_genus`, colors drawn from `colors`.
pub fn cobordism<R: Rng>(
    rng: &mut R,
    inputs: usize,
    outputs: usize,
    max_genus: u32,
    max_components: usize,
    colors: &[AlgElem],
) -> ColoredCobordism {
    let k = rng.random_range(1..=max_components.max(1));
    let mut comps: Vec<Component> = (0..k)
        .map(|_| Component {
            inputs: BTreeSet::new(),
            outputs: BTreeSet::new(),
            genus: rng.random_range(0..=max_genus),
            color: colors[rng.random_range(0..colors.len())].clone(),
        })
        .collect();
    for i in 0..inputs {
        comps[rng.random_range(0..k)].inputs.insert(i);
    }
    for j in 0..outputs {
        comps[rng.random_range(0..k)].outputs.insert(j);
    }
    ColoredCobordism::new(inputs, outputs, comps).expect("every circle assigned once")
}

/// Random tensor of the given arity with up to `max_terms` basis terms.
pub fn tensor<R: Rng>(rng: &mut R, sys: &FrobeniusSystem, arity: usize, max_terms: usize) -> TensorElem {
    let mut t = TensorElem::zero(arity);
    for _ in 0..rng.random_range(0..=max_terms) {
        let slots = (0..arity).map(|_| rng.random_range(0..sys.rank())).collect();
        t.add_term(slots, ring_elem(rng, sys.ring(), 1, 2));
    }
    t
}

/// Random pattern with black vertices `T0, T1, ...`, white vertices
/// `w0, w1, ...`, random (possibly looped) edges and one color per component.
pub fn pattern<R: Rng>(
    rng: &mut R,
    max_black: usize,
    max_white: usize,
    max_edges: usize,
    colors: &[AlgElem],
) -> Pattern {
    let nb = rng.random_range(1..=max_black.max(1));
    let nw = rng.random_range(0..=max_white);
    let mut vertices: Vec<Vertex> =
        (0..nb).map(|i| Vertex { name: format!("T{i}"), kind: VertexKind::Black }).collect();
    vertices.extend((0..nw).map(|i| Vertex { name: format!("w{i}"), kind: VertexKind::White }));
    let n = vertices.len();
    let edges: Vec<(usize, usize)> =
        (0..rng.random_range(0..=max_edges)).map(|_| (rng.random_range(0..n), rng.random_range(0..n))).collect();
    let comp = components(n, &edges);
    let mut anchors: Vec<(String, AlgElem)> = Vec::new();
    for root in comp.iter().copied().collect::<BTreeSet<_>>() {
        let members: Vec<usize> = (0..n).filter(|&v| comp[v] == root).collect();
        let anchor = members[rng.random_range(0..members.len())];
        anchors.push((vertices[anchor].name.clone(), colors[rng.random_range(0..colors.len())].clone()));
    }
    let named = edges.iter().map(|&(a, b)| (vertices[a].name.clone(), vertices[b].name.clone())).collect();
    Pattern::new(vertices, named, anchors).expect("generated pattern is consistent")
}
