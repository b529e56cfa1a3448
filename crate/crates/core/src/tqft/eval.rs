use crate::frobenius::{basis_tuples, tuple_at, tuple_index, FrobeniusSystem, TensorElem};
use crate::par::Exec;
use crate::ring::RingElem;

use super::{CobordismWord, Generator, LinearMap, WordError};

/// One level with every generator's value on every basis input precomputed.
struct CompiledLevel {
    /// `(input arity, images indexed by tuple_index of the inputs)`.
    pieces: Vec<(usize, Vec<TensorElem>)>,
    out_width: usize,
}

fn generator_images(sys: &FrobeniusSystem, g: &Generator) -> Vec<TensorElem> {
    let n = sys.rank();
    let (arity, _) = g.arity();
    basis_tuples(n, arity)
        .map(|s| match g {
            Generator::Identity => TensorElem::basis(vec![s[0]], sys.ring_one()),
            Generator::Unit => TensorElem::from_alg(sys.unit()),
            Generator::Counit => TensorElem::scalar(sys.counit_coords()[s[0]].clone()),
            Generator::Mult => TensorElem::from_alg(sys.mul_basis(s[0], s[1])),
            Generator::Comult => sys.coproduct_basis(s[0]).clone(),
            Generator::Swap => TensorElem::basis(vec![s[1], s[0]], sys.ring_one()),
            Generator::Color(a) => TensorElem::from_alg(&sys.mul(&sys.basis_elem(s[0]), a)),
        })
        .collect()
}

fn check_colors(sys: &FrobeniusSystem, word: &CobordismWord) -> Result<(), WordError> {
    for (k, level) in word.levels().iter().enumerate() {
        for g in level {
            if let Generator::Color(a) = g {
                let ring_ok = a.coords().iter().all(|c| c.ring() == sys.ring());
                if a.rank() != sys.rank() || !ring_ok {
                    return Err(WordError::Color { level: k + 1 });
                }
            }
        }
    }
    Ok(())
}

fn compile(sys: &FrobeniusSystem, word: &CobordismWord) -> Result<Vec<CompiledLevel>, WordError> {
    check_colors(sys, word)?;
    Ok(word
        .levels()
        .iter()
        .map(|level| CompiledLevel {
            pieces: level.iter().map(|g| (g.arity().0, generator_images(sys, g))).collect(),
            out_width: level.iter().map(|g| g.arity().1).sum(),
        })
        .collect())
}

fn apply_level(sys: &FrobeniusSystem, level: &CompiledLevel, x: &TensorElem) -> TensorElem {
    let n = sys.rank();
    let mut out = TensorElem::zero(level.out_width);
    for (slots, coeff) in x.terms() {
        let mut acc = TensorElem::scalar(coeff.clone());
        let mut pos = 0;
        for (arity, images) in &level.pieces {
            let image = &images[tuple_index(n, &slots[pos..pos + arity])];
            pos += arity;
            acc = acc.tensor(image);
            if acc.is_zero() {
                break;
            }
        }
        for (s, c) in acc.terms() {
            out.add_term(s.clone(), c.clone());
        }
    }
    out
}

fn run(sys: &FrobeniusSystem, levels: &[CompiledLevel], x: TensorElem) -> TensorElem {
    levels.iter().fold(x, |t, level| apply_level(sys, level, &t))
}

/// Push `x ∈ A^{⊗r}` through the word level by level.
pub fn apply_word(sys: &FrobeniusSystem, word: &CobordismWord, x: &TensorElem) -> Result<TensorElem, WordError> {
    if x.arity() != word.input_width() {
        return Err(WordError::Width { level: 1, needed: word.input_width(), found: x.arity() });
    }
    let levels = compile(sys, word)?;
    Ok(run(sys, &levels, x.clone()))
}

pub fn word_to_map(sys: &FrobeniusSystem, word: &CobordismWord) -> Result<LinearMap, WordError> {
    word_to_map_with(sys, word, Exec::default())
}

/// Matrix of the word over all basis tuples of the domain.
pub fn word_to_map_with(sys: &FrobeniusSystem, word: &CobordismWord, exec: Exec) -> Result<LinearMap, WordError> {
    let levels = compile(sys, word)?;
    let n = sys.rank();
    let r = word.input_width();
    let total = n.checked_pow(r as u32).expect("domain too large");
    let columns =
        exec.map_range(total, |k| run(sys, &levels, TensorElem::basis(tuple_at(n, r, k), RingElem::one(sys.ring()))));
    Ok(LinearMap::new(n, r, word.output_width(), columns))
}
