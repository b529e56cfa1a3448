use crate::frobenius::{tuple_at, tuple_index, FrobeniusSystem, TensorElem};
use crate::ring::RingElem;

/// An `R`-linear map `A^{⊗r} → A^{⊗s}`, stored densely by columns: column
/// `k` is the image of the `k`-th basis tuple in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    rank: usize,
    domain: usize,
    codomain: usize,
    columns: Vec<TensorElem>,
}

impl LinearMap {
    pub fn new(rank: usize, domain: usize, codomain: usize, columns: Vec<TensorElem>) -> Self {
        assert_eq!(columns.len(), rank.pow(domain as u32), "one column per domain basis tuple");
        assert!(columns.iter().all(|c| c.arity() == codomain), "column arity must equal codomain");
        Self { rank, domain, codomain, columns }
    }

    pub fn identity(sys: &FrobeniusSystem, width: usize) -> Self {
        let n = sys.rank();
        let columns =
            (0..n.pow(width as u32)).map(|k| TensorElem::basis(tuple_at(n, width, k), sys.ring_one())).collect();
        Self::new(n, width, width, columns)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn domain(&self) -> usize {
        self.domain
    }

    pub fn codomain(&self) -> usize {
        self.codomain
    }

    pub fn columns(&self) -> &[TensorElem] {
        &self.columns
    }

    /// Image of a basis tuple.
    pub fn column(&self, slots: &[usize]) -> &TensorElem {
        &self.columns[tuple_index(self.rank, slots)]
    }

    pub fn apply(&self, x: &TensorElem) -> TensorElem {
        assert_eq!(x.arity(), self.domain, "argument arity");
        let mut out = TensorElem::zero(self.codomain);
        for (slots, c) in x.terms() {
            out.add_assign_scaled(self.column(slots), c);
        }
        out
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &LinearMap) -> LinearMap {
        assert_eq!(self.codomain, next.domain, "composable maps");
        let columns = self.columns.iter().map(|c| next.apply(c)).collect();
        LinearMap::new(self.rank, self.domain, next.codomain, columns)
    }

    /// `A^{⊗r}` entry `(row tuple, column tuple)`.
    pub fn entry(&self, row: &[usize], col: &[usize]) -> Option<&RingElem> {
        self.column(col).coeff(row)
    }
}
