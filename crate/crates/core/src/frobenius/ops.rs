use std::sync::Arc;

use crate::ring::{Assignment, RingElem};

use super::{AlgElem, FrobeniusSystem, Grading, Structure, SystemError, SystemSpec, TensorElem};

impl FrobeniusSystem {
    /// Basis `{w_j}` with `ε(b_i · w_j) = δ_ij`, from the inverse Gram matrix.
    pub fn dual_basis(&self) -> Result<Vec<AlgElem>, SystemError> {
        let gram = self.gram_matrix();
        let inv =
            gram.inverse().ok_or_else(|| SystemError::NoDualBasis { determinant: gram.determinant().to_string() })?;
        let n = self.rank();
        Ok((0..n).map(|j| AlgElem::new((0..n).map(|k| inv.get(k, j).clone()).collect())).collect())
    }

    /// Whether the powers `H^0, ..., H^{n-1}` of the handle element form a
    /// basis over the ground ring (unit determinant).
    pub fn geometric_check(&self) -> bool {
        let n = self.rank();
        let powers: Vec<AlgElem> = (0..n as u32).map(|k| self.pow(self.handle(), k)).collect();
        let rows = (0..n).map(|i| powers.iter().map(|p| p.coord(i).clone()).collect()).collect();
        crate::ring::RingMatrix::from_rows(self.ring(), rows).determinant().is_unit()
    }

    /// The twisted system with `Δ' = Δ∘μ_{y^{-1}}` and `ε' = ε∘μ_y`.
    pub fn twist(&self, y: &AlgElem) -> Result<FrobeniusSystem, SystemError> {
        let y_inv = self.inverse(y).ok_or_else(|| SystemError::NotInvertible(self.fmt_alg(y)))?;
        let delta1 = self.delta1().iter().map(|(u, v)| (u.clone(), self.mul(v, &y_inv))).collect();
        let counit = (0..self.rank()).map(|j| self.counit(&self.mul(y, &self.basis_elem(j)))).collect();
        FrobeniusSystem::new(SystemSpec { counit, delta1, ..self.to_spec() })
    }

    /// Coefficient-induced base change along a ring homomorphism.
    pub fn specialize(&self, assignment: &Assignment) -> Result<(FrobeniusSystem, ElementMapper), SystemError> {
        let target = assignment.target();
        let map = |r: &RingElem| r.substitute(assignment);
        let map_alg = |a: &AlgElem| -> Result<AlgElem, SystemError> {
            Ok(AlgElem::new(a.coords().iter().map(map).collect::<Result<_, _>>()?))
        };
        let structure = match self.structure() {
            Structure::Quotient { generator, relation } => Structure::Quotient {
                generator: generator.clone(),
                relation: relation.iter().map(map).collect::<Result<_, _>>()?,
            },
            Structure::Explicit { basis, unit, table } => Structure::Explicit {
                basis: basis.clone(),
                unit: map_alg(unit)?,
                table: table
                    .iter()
                    .map(|row| row.iter().map(map_alg).collect::<Result<_, _>>())
                    .collect::<Result<_, _>>()?,
            },
        };
        let counit = self.counit_coords().iter().map(map).collect::<Result<_, _>>()?;
        // pairs that vanish after base change carry no information
        let mut delta1 = Vec::new();
        for (u, v) in self.delta1() {
            let (u, v) = (map_alg(u)?, map_alg(v)?);
            if !u.is_zero() && !v.is_zero() {
                delta1.push((u, v));
            }
        }
        let grading = self.grading().map(|g| {
            Grading::new(
                g.iter()
                    .filter(|(name, _)| self.ring().index_of(name).is_none() || target.index_of(name).is_some())
                    .map(|(n, d)| (n.clone(), *d)),
            )
        });
        let sys = FrobeniusSystem::new(SystemSpec {
            name: self.name().to_string(),
            ring: target.clone(),
            structure,
            counit,
            delta1,
            grading,
        })?;
        let target_sys = Arc::new(sys.clone());
        Ok((sys, ElementMapper { assignment: assignment.clone(), target: target_sys }))
    }
}

/// Sends elements over a system to its coefficient-induced specialization.
#[derive(Clone, Debug)]
pub struct ElementMapper {
    assignment: Assignment,
    target: Arc<FrobeniusSystem>,
}

impl ElementMapper {
    pub fn target(&self) -> &Arc<FrobeniusSystem> {
        &self.target
    }

    pub fn map_ring(&self, r: &RingElem) -> Result<RingElem, SystemError> {
        Ok(r.substitute(&self.assignment)?)
    }

    pub fn map_alg(&self, a: &AlgElem) -> Result<AlgElem, SystemError> {
        Ok(AlgElem::new(a.coords().iter().map(|c| self.map_ring(c)).collect::<Result<_, _>>()?))
    }

    pub fn map_tensor(&self, t: &TensorElem) -> Result<TensorElem, SystemError> {
        let mut out = TensorElem::zero(t.arity());
        for (s, c) in t.terms() {
            out.add_term(s.clone(), self.map_ring(c)?);
        }
        Ok(out)
    }
}
