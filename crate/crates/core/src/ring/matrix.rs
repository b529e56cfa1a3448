//! Division-free determinants and adjugates over a ground ring.
//!
//! Matrices here are small (rank of an algebra, number of structure pairs),
//! so the determinant is computed by dynamic programming over column subsets
//! in `O(n * 2^n)` ring operations. No division is ever needed.

use std::sync::Arc;

use super::{RingDescriptor, RingElem};

/// Square matrix stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMatrix {
    ring: Arc<RingDescriptor>,
    n: usize,
    entries: Vec<RingElem>,
}

impl RingMatrix {
    pub fn from_rows(ring: &Arc<RingDescriptor>, rows: Vec<Vec<RingElem>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self { ring: ring.clone(), n, entries: rows.into_iter().flatten().collect() }
    }

    pub fn identity(ring: &Arc<RingDescriptor>, n: usize) -> Self {
        let entries =
            (0..n * n).map(|k| if k / n == k % n { RingElem::one(ring) } else { RingElem::zero(ring) }).collect();
        Self { ring: ring.clone(), n, entries }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElem {
        &self.entries[i * self.n + j]
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let entries = (0..n * n).map(|k| self.get(k % n, k / n).clone()).collect();
        Self { ring: self.ring.clone(), n, entries }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = RingElem::zero(&self.ring);
                for k in 0..n {
                    acc = &acc + &(self.get(i, k) * other.get(k, j));
                }
                entries.push(acc);
            }
        }
        Self { ring: self.ring.clone(), n, entries }
    }

    pub fn mul_vec(&self, v: &[RingElem]) -> Vec<RingElem> {
        (0..self.n)
            .map(|i| (0..self.n).fold(RingElem::zero(&self.ring), |acc, k| &acc + &(self.get(i, k) * &v[k])))
            .collect()
    }

    pub fn determinant(&self) -> RingElem {
        determinant_of(&self.ring, self.n, |i, j| self.get(i, j))
    }

    /// Classical adjugate: `adj(A) * A = det(A) * I`.
    pub fn adjugate(&self) -> Self {
        let n = self.n;
        if n == 1 {
            return Self::identity(&self.ring, 1);
        }
        let mut entries = vec![RingElem::zero(&self.ring); n * n];
        for i in 0..n {
            for j in 0..n {
                // cofactor C_ij, stored transposed
                let minor = determinant_of(&self.ring, n - 1, |a, b| {
                    let r = if a < i { a } else { a + 1 };
                    let c = if b < j { b } else { b + 1 };
                    self.get(r, c)
                });
                entries[j * n + i] = if (i + j) % 2 == 0 { minor } else { -minor };
            }
        }
        Self { ring: self.ring.clone(), n, entries }
    }

    /// Exact inverse when the determinant is a unit of the ground ring.
    pub fn inverse(&self) -> Option<Self> {
        let inv_det = self.determinant().unit_inverse()?;
        let adj = self.adjugate();
        Some(Self { ring: self.ring.clone(), n: self.n, entries: adj.entries.iter().map(|e| e * &inv_det).collect() })
    }
}

fn determinant_of<'a>(ring: &Arc<RingDescriptor>, n: usize, entry: impl Fn(usize, usize) -> &'a RingElem) -> RingElem {
    if n == 0 {
        return RingElem::one(ring);
    }
    assert!(n < 24, "determinant size {n} is out of range");
    let full = (1usize << n) - 1;
    let mut partial: Vec<Option<RingElem>> = vec![None; 1 << n];
    partial[0] = Some(RingElem::one(ring));
    for mask in 0..full {
        let Some(acc) = partial[mask].take() else { continue };
        if acc.is_zero() {
            continue;
        }
        let row = mask.count_ones() as usize;
        for col in 0..n {
            if mask & (1 << col) != 0 {
                continue;
            }
            let a = entry(row, col);
            if a.is_zero() {
                continue;
            }
            // inversions added by placing `col` after the columns already used
            let above = (mask >> (col + 1)).count_ones();
            let mut term = &acc * a;
            if above % 2 == 1 {
                term = -term;
            }
            let slot = &mut partial[mask | (1 << col)];
            *slot = Some(match slot.take() {
                Some(prev) => &prev + &term,
                None => term,
            });
        }
    }
    partial[full].take().unwrap_or_else(|| RingElem::zero(ring))
}
