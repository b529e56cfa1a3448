use crate::frobenius::AlgElem;

use super::WordError;

/// Elementary colored cobordism occupying a run of adjacent strands.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    Identity,
    Unit,
    Counit,
    Mult,
    Comult,
    /// Transposition of two neighbouring strands.
    Swap,
    /// Multiplication by a fixed element on one strand.
    Color(AlgElem),
}

impl Generator {
    /// `(inputs, outputs)`.
    pub fn arity(&self) -> (usize, usize) {
        match self {
            Generator::Identity | Generator::Color(_) => (1, 1),
            Generator::Unit => (0, 1),
            Generator::Counit => (1, 0),
            Generator::Mult => (2, 1),
            Generator::Comult => (1, 2),
            Generator::Swap => (2, 2),
        }
    }

    pub fn keyword(&self) -> &'static str {
        match self {
            Generator::Identity => "id",
            Generator::Unit => "unit",
            Generator::Counit => "counit",
            Generator::Mult => "mult",
            Generator::Comult => "comult",
            Generator::Swap => "swap",
            Generator::Color(_) => "color",
        }
    }
}

/// A Morse-style decomposition: levels are read from the input circles
/// towards the output circles, each level a horizontal juxtaposition of
/// generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CobordismWord {
    input_width: usize,
    levels: Vec<Vec<Generator>>,
}

impl CobordismWord {
    pub fn new(input_width: usize, levels: Vec<Vec<Generator>>) -> Result<Self, WordError> {
        let mut width = input_width;
        for (k, level) in levels.iter().enumerate() {
            let needed: usize = level.iter().map(|g| g.arity().0).sum();
            if needed != width {
                return Err(WordError::Width { level: k + 1, needed, found: width });
            }
            width = level.iter().map(|g| g.arity().1).sum();
        }
        Ok(Self { input_width, levels })
    }

    /// The word with no levels on `width` strands.
    pub fn identity(width: usize) -> Self {
        Self { input_width: width, levels: Vec::new() }
    }

    pub fn input_width(&self) -> usize {
        self.input_width
    }

    pub fn output_width(&self) -> usize {
        self.levels.last().map_or(self.input_width, |l| l.iter().map(|g| g.arity().1).sum())
    }

    pub fn levels(&self) -> &[Vec<Generator>] {
        &self.levels
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &CobordismWord) -> Result<Self, WordError> {
        if self.output_width() != next.input_width {
            return Err(WordError::Width {
                level: self.levels.len() + 1,
                needed: next.input_width,
                found: self.output_width(),
            });
        }
        let mut levels = self.levels.clone();
        levels.extend(next.levels.iter().cloned());
        Ok(Self { input_width: self.input_width, levels })
    }

    /// Side-by-side juxtaposition, `self` on the left.
    pub fn beside(&self, other: &CobordismWord) -> Self {
        let depth = self.levels.len().max(other.levels.len());
        let pad = |w: &CobordismWord, k: usize| -> Vec<Generator> {
            match w.levels.get(k) {
                Some(level) => level.clone(),
                None => vec![Generator::Identity; w.output_width()],
            }
        };
        let levels = (0..depth)
            .map(|k| {
                let mut l = pad(self, k);
                l.extend(pad(other, k));
                l
            })
            .collect();
        Self { input_width: self.input_width + other.input_width, levels }
    }
}
