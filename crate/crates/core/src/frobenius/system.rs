use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::ring::{RingDescriptor, RingElem, RingMatrix};

use super::{AlgElem, Grading, SystemError, TensorElem};

/// How the algebra was presented; kept so systems can be rendered back.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    /// `R[X]/(X^n - Σ_k c_k X^k)` with basis `1, X, ..., X^{n-1}`.
    /// `relation[k]` is `c_k`.
    Quotient { generator: String, relation: Vec<RingElem> },
    /// Explicit basis with a full multiplication table.
    Explicit { basis: Vec<String>, unit: AlgElem, table: Vec<Vec<AlgElem>> },
}

/// Everything needed to build a [`FrobeniusSystem`].
#[derive(Clone, Debug)]
pub struct SystemSpec {
    pub name: String,
    pub ring: Arc<RingDescriptor>,
    pub structure: Structure,
    /// Counit on the basis.
    pub counit: Vec<RingElem>,
    /// Structure pairs `(u_i, v_i)` with `Δ(1) = Σ u_i ⊗ v_i`.
    pub delta1: Vec<(AlgElem, AlgElem)>,
    pub grading: Option<Grading>,
}

/// The identity a candidate system violated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    UnitLaw,
    Commutativity,
    Associativity,
    PairSymmetry,
    Expansion,
    CounitCondition,
    Cocommutativity,
    Coassociativity,
    Bimodule,
    NonRedundancy,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::UnitLaw => "unit law 1·a = a",
            Axiom::Commutativity => "commutativity a·b = b·a",
            Axiom::Associativity => "associativity (a·b)·c = a·(b·c)",
            Axiom::PairSymmetry => "pair symmetry Σ u_i⊗v_i = Σ v_i⊗u_i",
            Axiom::Expansion => "expansion a = Σ ε(a·u_i)·v_i = Σ ε(a·v_i)·u_i",
            Axiom::CounitCondition => "counit condition (ε⊗Id)∘Δ = Id",
            Axiom::Cocommutativity => "cocommutativity τ∘Δ = Δ",
            Axiom::Coassociativity => "coassociativity (Id⊗Δ)∘Δ = (Δ⊗Id)∘Δ",
            Axiom::Bimodule => "bimodule Δ(a·b) = Δ(a)·b = a·Δ(b)",
            Axiom::NonRedundancy => "no sub-collection of pairs sums to zero",
        })
    }
}

/// A verified free Frobenius system of finite rank.
///
/// Construction runs the full axiom suite; every value of this type satisfies
/// it, so downstream code relies on the identities without rechecking.
#[derive(Clone, Debug)]
pub struct FrobeniusSystem {
    name: String,
    ring: Arc<RingDescriptor>,
    basis: Vec<String>,
    structure: Structure,
    unit: AlgElem,
    table: Vec<Vec<AlgElem>>,
    counit: Vec<RingElem>,
    delta1: Vec<(AlgElem, AlgElem)>,
    grading: Option<Grading>,
    // derived
    delta1_tensor: TensorElem,
    coproducts: Vec<TensorElem>,
    gram: Vec<Vec<RingElem>>,
    handle: AlgElem,
}

impl PartialEq for FrobeniusSystem {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && self.basis == other.basis
            && self.unit == other.unit
            && self.table == other.table
            && self.counit == other.counit
            && self.delta1 == other.delta1
    }
}

/// Build and verify a system.
pub fn make_system(spec: SystemSpec) -> Result<FrobeniusSystem, SystemError> {
    FrobeniusSystem::new(spec)
}

impl FrobeniusSystem {
    pub fn new(spec: SystemSpec) -> Result<Self, SystemError> {
        let SystemSpec { name, ring, structure, counit, delta1, grading } = spec;
        let (basis, unit, table) = match &structure {
            Structure::Quotient { generator, relation } => quotient_table(&ring, generator, relation)?,
            Structure::Explicit { basis, unit, table } => (basis.clone(), unit.clone(), table.clone()),
        };
        check_shape(&ring, &basis, &unit, &table, &counit, &delta1)?;

        let n = basis.len();
        let mut sys = FrobeniusSystem {
            name,
            ring: ring.clone(),
            basis,
            structure,
            unit,
            table,
            counit,
            delta1,
            grading,
            delta1_tensor: TensorElem::zero(2),
            coproducts: Vec::new(),
            gram: Vec::new(),
            handle: AlgElem::zero(&ring, n),
        };
        sys.delta1_tensor = sys.delta1.iter().fold(TensorElem::zero(2), |acc, (u, v)| acc.add(&sys.pair_tensor(u, v)));
        sys.coproducts = (0..n).map(|j| sys.coproduct_uncached(&sys.basis_elem(j))).collect();
        sys.gram = (0..n).map(|i| (0..n).map(|j| sys.counit(&sys.table[i][j])).collect()).collect();
        sys.handle = sys.delta1.iter().fold(AlgElem::zero(&ring, n), |acc, (u, v)| &acc + &sys.mul(u, v));
        sys.verify()?;
        Ok(sys)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn ring(&self) -> &Arc<RingDescriptor> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn grading(&self) -> Option<&Grading> {
        self.grading.as_ref()
    }

    pub fn counit_coords(&self) -> &[RingElem] {
        &self.counit
    }

    pub fn delta1(&self) -> &[(AlgElem, AlgElem)] {
        &self.delta1
    }

    /// `Δ(1)` as an arity-2 tensor.
    pub fn delta1_tensor(&self) -> &TensorElem {
        &self.delta1_tensor
    }

    pub fn unit(&self) -> &AlgElem {
        &self.unit
    }

    pub fn zero(&self) -> AlgElem {
        AlgElem::zero(&self.ring, self.rank())
    }

    pub fn basis_elem(&self, i: usize) -> AlgElem {
        AlgElem::basis(&self.ring, self.rank(), i)
    }

    pub fn scalar(&self, r: &RingElem) -> AlgElem {
        self.unit.scale(r)
    }

    pub fn ring_zero(&self) -> RingElem {
        RingElem::zero(&self.ring)
    }

    pub fn ring_one(&self) -> RingElem {
        RingElem::one(&self.ring)
    }

    pub fn ring_int(&self, n: i64) -> RingElem {
        RingElem::from_int(&self.ring, n)
    }

    /// Product of basis elements `b_i · b_j`.
    pub fn mul_basis(&self, i: usize, j: usize) -> &AlgElem {
        &self.table[i][j]
    }

    pub fn mul(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        let mut out = self.zero();
        for (i, ca) in a.support() {
            for (j, cb) in b.support() {
                let c = ca * cb;
                out = &out + &self.table[i][j].scale(&c);
            }
        }
        out
    }

    pub fn pow(&self, a: &AlgElem, k: u32) -> AlgElem {
        (0..k).fold(self.unit.clone(), |acc, _| self.mul(&acc, a))
    }

    pub fn counit(&self, a: &AlgElem) -> RingElem {
        a.support().fold(self.ring_zero(), |acc, (i, c)| &acc + &(c * &self.counit[i]))
    }

    /// `ε(b_i · b_j)`.
    pub fn gram(&self, i: usize, j: usize) -> &RingElem {
        &self.gram[i][j]
    }

    pub fn gram_matrix(&self) -> RingMatrix {
        RingMatrix::from_rows(&self.ring, self.gram.clone())
    }

    /// `Δ(a) = Σ u_i ⊗ v_i·a`.
    pub fn coproduct(&self, a: &AlgElem) -> TensorElem {
        let mut out = TensorElem::zero(2);
        for (j, c) in a.support() {
            out.add_assign_scaled(&self.coproducts[j], c);
        }
        out
    }

    pub fn coproduct_basis(&self, j: usize) -> &TensorElem {
        &self.coproducts[j]
    }

    fn coproduct_uncached(&self, a: &AlgElem) -> TensorElem {
        self.delta1.iter().fold(TensorElem::zero(2), |acc, (u, v)| acc.add(&self.pair_tensor(u, &self.mul(v, a))))
    }

    /// The handle element `μ(Δ(1)) = Σ u_i·v_i`.
    pub fn handle(&self) -> &AlgElem {
        &self.handle
    }

    /// `ε(μ(Δ(1)))`, the rank of the system.
    pub fn rank_invariant(&self) -> RingElem {
        self.counit(&self.handle)
    }

    pub(crate) fn pair_tensor(&self, u: &AlgElem, v: &AlgElem) -> TensorElem {
        TensorElem::from_alg(u).tensor(&TensorElem::from_alg(v))
    }

    /// Matrix of `μ_a` in the basis: column `j` holds the coordinates of `a·b_j`.
    pub fn mult_matrix(&self, a: &AlgElem) -> RingMatrix {
        let cols: Vec<AlgElem> = (0..self.rank()).map(|j| self.mul(a, &self.basis_elem(j))).collect();
        let rows = (0..self.rank()).map(|i| cols.iter().map(|c| c.coord(i).clone()).collect()).collect();
        RingMatrix::from_rows(&self.ring, rows)
    }

    /// Inverse in the algebra, if `μ_a` has unit determinant.
    pub fn inverse(&self, a: &AlgElem) -> Option<AlgElem> {
        let inv = self.mult_matrix(a).inverse()?;
        Some(AlgElem::new(inv.mul_vec(self.unit.coords())))
    }

    /// `x` with the element `a` multiplied into slot `slot`.
    pub fn mul_slot(&self, x: &TensorElem, slot: usize, a: &AlgElem) -> TensorElem {
        x.map_slot(slot, 1, |j| TensorElem::from_alg(&self.mul(&self.basis_elem(j), a)))
    }

    /// Apply `Δ` to slot `slot`, increasing arity by one.
    pub fn coproduct_slot(&self, x: &TensorElem, slot: usize) -> TensorElem {
        x.map_slot(slot, 2, |j| self.coproducts[j].clone())
    }

    /// Apply `ε` to slot `slot`, decreasing arity by one.
    pub fn counit_slot(&self, x: &TensorElem, slot: usize) -> TensorElem {
        x.map_slot(slot, 0, |j| TensorElem::scalar(self.counit[j].clone()))
    }

    /// Left-nested iterated coproduct `Δ^{(k-1)}(a)` of arity `k >= 1`.
    pub fn iterated_coproduct(&self, a: &AlgElem, k: usize) -> TensorElem {
        assert!(k >= 1, "iterated coproduct needs arity at least 1");
        (1..k).fold(TensorElem::from_alg(a), |t, _| self.coproduct_slot(&t, 0))
    }

    /// Rebuild with another pair list for the same algebra and counit.
    pub fn with_pairs(&self, delta1: Vec<(AlgElem, AlgElem)>) -> Result<Self, SystemError> {
        Self::new(SystemSpec { delta1, ..self.to_spec() })
    }

    pub fn with_grading(&self, grading: Option<Grading>) -> Self {
        Self { grading, ..self.clone() }
    }

    pub fn to_spec(&self) -> SystemSpec {
        SystemSpec {
            name: self.name.clone(),
            ring: self.ring.clone(),
            structure: self.structure.clone(),
            counit: self.counit.clone(),
            delta1: self.delta1.clone(),
            grading: self.grading.clone(),
        }
    }

    fn verify(&self) -> Result<(), SystemError> {
        let n = self.rank();
        let b = |i: usize| self.basis_elem(i);
        let name = |i: usize| self.basis[i].clone();

        let fails: Vec<String> = (0..n).filter(|&j| self.mul(&self.unit, &b(j)) != b(j)).map(name).collect();
        fail_if(Axiom::UnitLaw, fails)?;

        let mut fails = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.table[i][j] != self.table[j][i] {
                    fails.push(format!("{}*{}", self.basis[i], self.basis[j]));
                }
            }
        }
        fail_if(Axiom::Commutativity, fails)?;

        let mut fails = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = self.mul(&self.table[i][j], &b(k));
                    let right = self.mul(&b(i), &self.table[j][k]);
                    if left != right {
                        fails.push(format!("{}*{}*{}", self.basis[i], self.basis[j], self.basis[k]));
                    }
                }
            }
        }
        fail_if(Axiom::Associativity, fails)?;

        let swapped = self.delta1_tensor.permute(&[1, 0]);
        fail_if(Axiom::PairSymmetry, if swapped == self.delta1_tensor { vec![] } else { vec!["Δ(1)".into()] })?;

        let fails: Vec<String> = (0..n)
            .filter(|&j| {
                let a = b(j);
                let via_u =
                    self.delta1.iter().fold(self.zero(), |acc, (u, v)| &acc + &v.scale(&self.counit(&self.mul(&a, u))));
                let via_v =
                    self.delta1.iter().fold(self.zero(), |acc, (u, v)| &acc + &u.scale(&self.counit(&self.mul(&a, v))));
                via_u != a || via_v != a
            })
            .map(name)
            .collect();
        fail_if(Axiom::Expansion, fails)?;

        let fails: Vec<String> = (0..n)
            .filter(|&j| {
                let collapsed = self.counit_slot(&self.coproducts[j], 0);
                collapsed != TensorElem::from_alg(&b(j))
            })
            .map(name)
            .collect();
        fail_if(Axiom::CounitCondition, fails)?;

        let fails: Vec<String> =
            (0..n).filter(|&j| self.coproducts[j].permute(&[1, 0]) != self.coproducts[j]).map(name).collect();
        fail_if(Axiom::Cocommutativity, fails)?;

        let fails: Vec<String> = (0..n)
            .filter(|&j| self.coproduct_slot(&self.coproducts[j], 1) != self.coproduct_slot(&self.coproducts[j], 0))
            .map(name)
            .collect();
        fail_if(Axiom::Coassociativity, fails)?;

        let mut fails = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let whole = self.coproduct(&self.table[i][j]);
                let right = self.mul_slot(&self.coproducts[i], 1, &b(j));
                let left = self.mul_slot(&self.coproducts[j], 0, &b(i));
                if whole != right || whole != left {
                    fails.push(format!("{}*{}", self.basis[i], self.basis[j]));
                }
            }
        }
        fail_if(Axiom::Bimodule, fails)?;

        self.check_non_redundant()
    }

    fn check_non_redundant(&self) -> Result<(), SystemError> {
        let pairs: Vec<TensorElem> = self.delta1.iter().map(|(u, v)| self.pair_tensor(u, v)).collect();
        let r = pairs.len();
        // Exhaustive for up to 16 pairs; beyond that only single pairs are checked.
        if r > 16 {
            let fails: Vec<String> =
                pairs.iter().enumerate().filter(|(_, p)| p.is_zero()).map(|(i, _)| format!("pair {}", i + 1)).collect();
            return fail_if(Axiom::NonRedundancy, fails);
        }
        // Gray-code walk over all nonempty subsets.
        let mut sum = TensorElem::zero(2);
        let mut current = 0usize;
        for k in 1usize..(1 << r) {
            let gray = k ^ (k >> 1);
            let flipped = (gray ^ current).trailing_zeros() as usize;
            if gray & (1 << flipped) != 0 {
                sum = sum.add(&pairs[flipped]);
            } else {
                sum = sum.sub(&pairs[flipped]);
            }
            current = gray;
            if sum.is_zero() {
                let members: Vec<String> =
                    (0..r).filter(|i| gray & (1 << i) != 0).map(|i| (i + 1).to_string()).collect();
                return fail_if(Axiom::NonRedundancy, vec![format!("pairs {{{}}}", members.join(","))]);
            }
        }
        Ok(())
    }
}

fn fail_if(axiom: Axiom, witnesses: Vec<String>) -> Result<(), SystemError> {
    if witnesses.is_empty() {
        Ok(())
    } else {
        Err(SystemError::Axiom { axiom, witnesses })
    }
}

pub(crate) type Table = (Vec<String>, AlgElem, Vec<Vec<AlgElem>>);

pub(crate) fn quotient_table(
    ring: &Arc<RingDescriptor>,
    generator: &str,
    relation: &[RingElem],
) -> Result<Table, SystemError> {
    let n = relation.len();
    if n == 0 {
        return Err(SystemError::Shape("quotient relation must have degree at least 1".into()));
    }
    if relation.iter().any(|c| c.ring() != ring) {
        return Err(SystemError::Shape("relation coefficients live in another ring".into()));
    }
    let basis: Vec<String> = (0..n)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => generator.to_string(),
            _ => format!("{generator}^{k}"),
        })
        .collect();
    // powers X^0 .. X^{2n-2} reduced to the basis
    let mut powers: Vec<Vec<RingElem>> = vec![AlgElem::basis(ring, n, 0).coords().to_vec()];
    for _ in 1..(2 * n - 1) {
        let prev = powers.last().unwrap();
        let overflow = prev[n - 1].clone();
        let mut next = vec![RingElem::zero(ring); n];
        next[1..n].clone_from_slice(&prev[..n - 1]);
        for k in 0..n {
            next[k] = &next[k] + &(&overflow * &relation[k]);
        }
        powers.push(next);
    }
    let table =
        (0..n).map(|i| (0..n).map(|j| AlgElem::new(powers[i + j].clone())).collect()).collect::<Vec<Vec<AlgElem>>>();
    Ok((basis, AlgElem::basis(ring, n, 0), table))
}

fn check_shape(
    ring: &Arc<RingDescriptor>,
    basis: &[String],
    unit: &AlgElem,
    table: &[Vec<AlgElem>],
    counit: &[RingElem],
    delta1: &[(AlgElem, AlgElem)],
) -> Result<(), SystemError> {
    let n = basis.len();
    let shape = |m: String| Err(SystemError::Shape(m));
    if n == 0 {
        return shape("basis must be nonempty".into());
    }
    let unique: BTreeSet<&String> = basis.iter().collect();
    if unique.len() != n {
        return shape("basis names must be distinct".into());
    }
    if table.len() != n || table.iter().any(|row| row.len() != n) {
        return shape(format!("multiplication table must be {n}x{n}"));
    }
    if counit.len() != n {
        return shape(format!("counit needs {n} values, found {}", counit.len()));
    }
    if delta1.is_empty() {
        return shape("Δ(1) needs at least one pair".into());
    }
    let elems = std::iter::once(unit).chain(table.iter().flatten()).chain(delta1.iter().flat_map(|(u, v)| [u, v]));
    for a in elems {
        if a.rank() != n {
            return shape(format!("element of rank {} in a rank {n} system", a.rank()));
        }
        if a.coords().iter().any(|c| c.ring() != ring) {
            return shape(format!("element coefficients must lie in {ring}"));
        }
    }
    if counit.iter().any(|c| c.ring() != ring) {
        return shape(format!("counit values must lie in {ring}"));
    }
    Ok(())
}
