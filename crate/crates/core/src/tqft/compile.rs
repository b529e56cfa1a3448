use std::collections::{BTreeMap, BTreeSet};

use crate::frobenius::{AlgElem, FrobeniusSystem};
use crate::skein::{ColoredCobordism, Component};

use super::{CobordismWord, Generator, WordError};

/// Disjoint-set forest over strand pieces.
#[derive(Default)]
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn make(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) -> usize {
        let (ra, rb) = (self.find(a), self.find(b));
        self.parent[rb] = ra;
        ra
    }
}

struct Piece {
    euler: i64,
    color: Option<AlgElem>,
}

/// The abstract colored surface swept out by a word: one component per
/// connected piece, genus from `χ = 2 - 2g - b`, colors multiplied together.
pub fn word_to_surface(sys: &FrobeniusSystem, word: &CobordismWord) -> Result<ColoredCobordism, WordError> {
    let mut uf = UnionFind::default();
    let mut pieces: Vec<Piece> = Vec::new();
    let fresh = |uf: &mut UnionFind, pieces: &mut Vec<Piece>, euler: i64| {
        pieces.push(Piece { euler, color: None });
        uf.make()
    };

    let mut strands: Vec<usize> = (0..word.input_width()).map(|_| fresh(&mut uf, &mut pieces, 0)).collect();
    let inputs = strands.clone();

    for (k, level) in word.levels().iter().enumerate() {
        let mut next = Vec::new();
        let mut pos = 0;
        for g in level {
            let (ins, _) = g.arity();
            let here = &strands[pos..pos + ins];
            pos += ins;
            match g {
                Generator::Identity => next.push(here[0]),
                Generator::Color(a) => {
                    if a.rank() != sys.rank() {
                        return Err(WordError::Color { level: k + 1 });
                    }
                    let piece = &mut pieces[here[0]];
                    piece.color = Some(match piece.color.take() {
                        None => a.clone(),
                        Some(c) => sys.mul(&c, a),
                    });
                    next.push(here[0]);
                }
                Generator::Unit => next.push(fresh(&mut uf, &mut pieces, 1)),
                Generator::Counit => pieces[here[0]].euler += 1,
                Generator::Mult => {
                    uf.union(here[0], here[1]);
                    pieces[here[0]].euler -= 1;
                    next.push(here[0]);
                }
                Generator::Comult => {
                    pieces[here[0]].euler -= 1;
                    next.extend([here[0], here[0]]);
                }
                Generator::Swap => next.extend([here[1], here[0]]),
            }
        }
        strands = next;
    }

    struct Acc {
        euler: i64,
        color: AlgElem,
        inputs: BTreeSet<usize>,
        outputs: BTreeSet<usize>,
    }
    let mut by_root: BTreeMap<usize, Acc> = BTreeMap::new();
    for (id, piece) in pieces.iter().enumerate() {
        let root = uf.find(id);
        let acc = by_root.entry(root).or_insert_with(|| Acc {
            euler: 0,
            color: sys.unit().clone(),
            inputs: BTreeSet::new(),
            outputs: BTreeSet::new(),
        });
        acc.euler += piece.euler;
        if let Some(c) = &piece.color {
            acc.color = sys.mul(&acc.color, c);
        }
    }
    for (i, &s) in inputs.iter().enumerate() {
        let root = uf.find(s);
        by_root.get_mut(&root).expect("input piece").inputs.insert(i);
    }
    for (j, &s) in strands.iter().enumerate() {
        let root = uf.find(s);
        by_root.get_mut(&root).expect("output piece").outputs.insert(j);
    }

    let components = by_root
        .into_values()
        .map(|acc| {
            let boundary = (acc.inputs.len() + acc.outputs.len()) as i64;
            let twice_genus = 2 - acc.euler - boundary;
            assert!(twice_genus >= 0 && twice_genus % 2 == 0, "inconsistent Euler characteristic");
            Component { genus: (twice_genus / 2) as u32, inputs: acc.inputs, outputs: acc.outputs, color: acc.color }
        })
        .collect();
    Ok(ColoredCobordism::new(word.input_width(), word.output_width(), components)
        .expect("word components partition the boundary"))
}
