//! The named example systems.

use std::sync::Arc;

use crate::ring::{RingDescriptor, RingElem};

use super::{AlgElem, FrobeniusSystem, Structure, SystemError, SystemSpec};

fn rank2(ring: &Arc<RingDescriptor>, c0: i64, c1: i64) -> (AlgElem, AlgElem) {
    (
        AlgElem::new(vec![RingElem::from_int(ring, c0), RingElem::zero(ring)]),
        AlgElem::new(vec![RingElem::from_int(ring, 0), RingElem::from_int(ring, c1)]),
    )
}

/// Rank-two system `R[X]/(X^2 - hX - t)` with `ε(1)=0`, `ε(X)=1` and pairs
/// `{(1, X - h), (X, 1)}`, for given `h`, `t` in `ring`.
pub fn rank_two(
    name: &str,
    ring: &Arc<RingDescriptor>,
    h: RingElem,
    t: RingElem,
) -> Result<FrobeniusSystem, SystemError> {
    let (one, x) = rank2(ring, 1, 1);
    let x_minus_h = AlgElem::new(vec![-&h, RingElem::one(ring)]);
    FrobeniusSystem::new(SystemSpec {
        name: name.to_string(),
        ring: ring.clone(),
        structure: Structure::Quotient { generator: "X".into(), relation: vec![t, h] },
        counit: vec![RingElem::zero(ring), RingElem::one(ring)],
        delta1: vec![(one.clone(), x_minus_h), (x, one)],
        grading: None,
    })
}

/// The universal rank-two system over `Z[h,t]`.
pub fn universal() -> FrobeniusSystem {
    let ring = RingDescriptor::polynomial(["h", "t"]).unwrap();
    let h = RingElem::var(&ring, "h").unwrap();
    let t = RingElem::var(&ring, "t").unwrap();
    rank_two("universal", &ring, h, t).expect("universal system verifies")
}

/// `X^2 = 0` over `Z`.
pub fn barnatan() -> FrobeniusSystem {
    barnatan_over(&RingDescriptor::integers())
}

pub fn barnatan_over(ring: &Arc<RingDescriptor>) -> FrobeniusSystem {
    rank_two("barnatan", ring, RingElem::zero(ring), RingElem::zero(ring)).expect("barnatan system verifies")
}

/// `X^2 = t` over `Z[t]`: the `h = 0` reduction of the universal system.
pub fn gadnaot() -> FrobeniusSystem {
    gadnaot_over(&RingDescriptor::polynomial(["t"]).unwrap()).expect("gadnaot system verifies")
}

/// `X^2 = t` over any ring that has an indeterminate `t`.
pub fn gadnaot_over(ring: &Arc<RingDescriptor>) -> Result<FrobeniusSystem, SystemError> {
    let t = RingElem::var(ring, "t")?;
    rank_two("gadnaot", ring, RingElem::zero(ring), t)
}

/// Group algebra of `Z/n_1 x ... x Z/n_k` over `Z` with `Δ(1) = Σ g^{-1} ⊗ g`.
pub fn group(orders: &[u32]) -> Result<FrobeniusSystem, SystemError> {
    group_over(&RingDescriptor::integers(), orders)
}

pub fn group_over(ring: &Arc<RingDescriptor>, orders: &[u32]) -> Result<FrobeniusSystem, SystemError> {
    if orders.is_empty() || orders.contains(&0) {
        return Err(SystemError::Shape("group orders must be positive".into()));
    }
    let elements: Vec<Vec<u32>> = orders.iter().fold(vec![vec![]], |acc, &n| {
        acc.into_iter().flat_map(|p| (0..n).map(move |k| [p.clone(), vec![k]].concat())).collect()
    });
    let index = |e: &[u32]| elements.iter().position(|x| x == e).unwrap();
    let name = |e: &[u32]| -> String {
        let parts: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| {
                let g = if orders.len() == 1 { "g".to_string() } else { format!("g{}", i + 1) };
                if k == 1 {
                    g
                } else {
                    format!("{g}^{k}")
                }
            })
            .collect();
        if parts.is_empty() {
            "e".to_string()
        } else {
            parts.join("*")
        }
    };
    let n = elements.len();
    let basis: Vec<String> = elements.iter().map(|e| name(e)).collect();
    let elem = |i: usize| AlgElem::basis(ring, n, i);
    let table = elements
        .iter()
        .map(|a| {
            elements
                .iter()
                .map(|b| {
                    let c: Vec<u32> = a.iter().zip(b).zip(orders).map(|((x, y), m)| (x + y) % m).collect();
                    elem(index(&c))
                })
                .collect()
        })
        .collect();
    let counit = (0..n).map(|i| RingElem::from_int(ring, (i == 0) as i64)).collect();
    let delta1 = elements
        .iter()
        .map(|g| {
            let inv: Vec<u32> = g.iter().zip(orders).map(|(x, m)| (m - x) % m).collect();
            (elem(index(&inv)), elem(index(g)))
        })
        .collect();
    let label = orders.iter().map(|n| format!("Z/{n}")).collect::<Vec<_>>().join(" x ");
    FrobeniusSystem::new(SystemSpec {
        name: format!("group {label}"),
        ring: ring.clone(),
        structure: Structure::Explicit { basis, unit: elem(0), table },
        counit,
        delta1,
        grading: None,
    })
}
