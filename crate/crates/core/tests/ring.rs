use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use skein_core::gen;
use skein_core::ring::{ring_arith, Assignment, RingDescriptor, RingElem, RingError, RingMatrix, RingOp};

#[test]
fn rejects_bad_descriptors() {
    assert!(matches!(RingDescriptor::new(["h", "h"], []), Err(RingError::DuplicateIndeterminate(_))));
    assert!(matches!(RingDescriptor::new([""], []), Err(RingError::BadIndeterminate(_))));
    assert!(matches!(RingDescriptor::new(["t"], [4]), Err(RingError::NotPrime(4))));
}

#[test]
fn renders_canonically() {
    assert_eq!(RingDescriptor::integers().to_string(), "Z");
    assert_eq!(RingDescriptor::polynomial(["h", "t"]).unwrap().to_string(), "Z[h,t]");
    assert_eq!(RingDescriptor::new(["t"], [3, 2]).unwrap().to_string(), "Z[1/2,1/3][t]");
}

#[test]
fn invertible_integers() {
    let half = RingDescriptor::new(["t"], [2]).unwrap();
    assert!(half.is_invertible_integer(&BigInt::from(-8)));
    assert!(!half.is_invertible_integer(&BigInt::from(6)));
    assert!(!RingDescriptor::integers().is_invertible_integer(&BigInt::from(2)));
    assert!(RingDescriptor::integers().is_invertible_integer(&BigInt::from(-1)));
}

fn zht() -> Arc<RingDescriptor> {
    RingDescriptor::polynomial(["h", "t"]).unwrap()
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn add_and_render() {
    let r = zht();
    let h = RingElem::var(&r, "h").unwrap();
    let t = RingElem::var(&r, "t").unwrap();
    assert_eq!((&h + &t).to_string(), "h + t");
    let four_t = t.scale_int(4);
    assert_eq!((&h * &h + four_t).to_string(), "h^2 + 4*t");
    assert_eq!((-&h).to_string(), "-h");
    assert_eq!((&t - &h.scale_int(2)).to_string(), "-2*h + t");
}

#[test]
fn difference_of_squares() {
    let r = zht();
    let h = RingElem::var(&r, "h").unwrap();
    let t = RingElem::var(&r, "t").unwrap();
    let prod = (&h + &t) * (&h - &t);
    assert_eq!(prod, &h * &h - &t * &t);
    assert_eq!(prod.to_string(), "h^2 - t^2");
}

#[test]
fn quarter_in_half_ring() {
    let r = RingDescriptor::new(["t"], [2]).unwrap();
    let half = RingElem::constant(&r, rat(1, 2)).unwrap();
    let q = &half * &half;
    assert_eq!(q.to_string(), "1/4");
    assert_eq!(q.as_constant().unwrap(), rat(1, 4));
}

#[test]
fn coefficient_domain_and_mismatch() {
    let z = RingDescriptor::integers();
    assert!(matches!(RingElem::constant(&z, rat(1, 2)), Err(RingError::CoefficientDomain { .. })));
    let a = RingElem::one(&z);
    let b = RingElem::one(&zht());
    assert!(matches!(a.try_add(&b), Err(RingError::DescriptorMismatch { .. })));
    assert!(matches!(ring_arith(RingOp::Mul, &a, &b), Err(RingError::DescriptorMismatch { .. })));
}

#[test]
fn substitution_examples() {
    let r = zht();
    let zt = RingDescriptor::polynomial(["t"]).unwrap();
    let h = RingElem::var(&r, "h").unwrap();
    let t = RingElem::var(&r, "t").unwrap();
    let x = &h * &h + t.scale_int(4);
    let z = RingDescriptor::integers();
    let kill = Assignment::new(&z, [("h".into(), RingElem::zero(&z)), ("t".into(), RingElem::zero(&z))]).unwrap();
    assert!(x.substitute(&kill).unwrap().is_zero());

    let h0 = Assignment::new(&zt, [("h".into(), RingElem::zero(&zt)), ("t".into(), RingElem::var(&zt, "t").unwrap())])
        .unwrap();
    assert!(h.substitute(&h0).unwrap().is_zero());
    assert_eq!(t.pow(3).substitute(&h0).unwrap().to_string(), "t^3");

    let partial = Assignment::new(&zt, [("h".into(), RingElem::zero(&zt))]).unwrap();
    assert!(matches!(x.substitute(&partial), Err(RingError::IncompleteSubstitution(n)) if n == "t"));
}

#[test]
fn substitution_into_smaller_domain_fails() {
    let half = RingDescriptor::new(["t"], [2]).unwrap();
    let x = RingElem::constant(&half, rat(1, 2)).unwrap();
    let z = RingDescriptor::integers();
    let a = Assignment::new(&z, [("t".into(), RingElem::zero(&z))]).unwrap();
    assert!(matches!(x.substitute(&a), Err(RingError::CoefficientDomain { .. })));
}

#[test]
fn units() {
    let z = RingDescriptor::integers();
    let half_t = RingDescriptor::new(["t"], [2]).unwrap();
    assert!(!RingElem::from_int(&z, 2).is_unit());
    assert!(RingElem::from_int(&half_t, 2).is_unit());
    assert!(RingElem::from_int(&z, -1).is_unit());
    assert!(!RingElem::var(&zht(), "h").unwrap().is_unit());
    assert!(!RingElem::zero(&z).is_unit());
    let two = RingElem::from_int(&half_t, -4);
    let inv = two.unit_inverse().unwrap();
    assert!((&two * &inv).is_one());
    assert_eq!(inv.to_string(), "-1/4");
}

#[test]
fn rational_coefficients_render_with_sign() {
    let r = RingDescriptor::new(["t"], [2]).unwrap();
    let t = RingElem::var(&r, "t").unwrap();
    let x = RingElem::constant(&r, rat(-1, 2)).unwrap() * t.clone() + RingElem::one(&r);
    assert_eq!(x.to_string(), "-1/2*t + 1");
}

fn int_matrix(rows: &[&[i64]]) -> RingMatrix {
    let z = RingDescriptor::integers();
    RingMatrix::from_rows(&z, rows.iter().map(|r| r.iter().map(|&x| RingElem::from_int(&z, x)).collect()).collect())
}

/// Leibniz formula over all permutations.
fn brute_det(rows: &[&[i64]]) -> i64 {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for k in 0..n {
                let mut q = p.clone();
                q.insert(k, n - 1);
                out.push(q);
            }
        }
        out
    }
    let n = rows.len();
    perms(n)
        .into_iter()
        .map(|p| {
            let inv = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            let sign = if inv % 2 == 0 { 1 } else { -1 };
            sign * (0..n).map(|i| rows[i][p[i]]).product::<i64>()
        })
        .sum()
}

#[test]
fn determinant_matches_leibniz() {
    let cases: [&[&[i64]]; 4] = [
        &[&[1, 0], &[-3, 2]],
        &[&[2, -1, 0], &[1, 3, 4], &[0, 5, -2]],
        &[&[0, 1, 2, 3], &[4, 0, 6, 7], &[8, 9, 0, 1], &[2, 3, 4, 0]],
        &[&[1, 2, 3, 4, 5], &[0, 1, 0, 2, 1], &[3, 0, 1, 1, 0], &[1, 1, 1, 1, 1], &[2, 0, 0, 1, 3]],
    ];
    for rows in cases {
        let m = int_matrix(rows);
        assert_eq!(m.determinant().as_constant().unwrap(), BigRational::from_integer(brute_det(rows).into()));
    }
}

#[test]
fn adjugate_identity() {
    let m = int_matrix(&[&[2, -1, 0], &[1, 3, 4], &[0, 5, -2]]);
    let det = m.determinant();
    let prod = m.adjugate().mul(&m);
    let z = RingDescriptor::integers();
    for i in 0..3 {
        for j in 0..3 {
            let expect = if i == j { det.clone() } else { RingElem::zero(&z) };
            assert_eq!(prod.get(i, j), &expect);
        }
    }
}

#[test]
fn inverse_requires_unit_determinant() {
    assert!(int_matrix(&[&[1, 0], &[0, 2]]).inverse().is_none());
    let m = int_matrix(&[&[0, 1], &[1, 5]]);
    let inv = m.inverse().unwrap();
    assert_eq!(inv.mul(&m), RingMatrix::identity(&RingDescriptor::integers(), 2));
}

fn half_ht() -> Arc<RingDescriptor> {
    RingDescriptor::new(["h", "t"], [2]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn commutative_ring_laws(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let r = half_ht();
        let [a, b, c] = [(); 3].map(|_| gen::ring_elem(&mut rng, &r, 3, 4));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &RingElem::one(&r), a.clone());
        prop_assert_eq!(a.pow(3), &(&a * &a) * &a);
    }

    #[test]
    fn substitution_is_a_ring_map(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let r = half_ht();
        let target = RingDescriptor::new(["t"], [2]).unwrap();
        let phi = Assignment::new(&target, [
            ("h".to_string(), gen::ring_elem(&mut rng, &target, 2, 2)),
            ("t".to_string(), gen::ring_elem(&mut rng, &target, 2, 2)),
        ]).unwrap();
        let (a, b) = (gen::ring_elem(&mut rng, &r, 2, 3), gen::ring_elem(&mut rng, &r, 2, 3));
        let map = |x: &RingElem| x.substitute(&phi).unwrap();
        prop_assert_eq!(map(&(&a * &b)), &map(&a) * &map(&b));
        prop_assert_eq!(map(&(&a + &b)), &map(&a) + &map(&b));
        prop_assert!(map(&RingElem::one(&r)).is_one());
    }

    #[test]
    fn determinant_is_multiplicative(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let r = half_ht();
        let n = 3;
        let mut random = || {
            let rows = (0..n).map(|_| (0..n).map(|_| gen::ring_elem(&mut rng, &r, 1, 2)).collect()).collect();
            RingMatrix::from_rows(&r, rows)
        };
        let (a, b) = (random(), random());
        prop_assert_eq!(a.mul(&b).determinant(), &a.determinant() * &b.determinant());
        prop_assert_eq!(a.transpose().determinant(), a.determinant());
    }
}
