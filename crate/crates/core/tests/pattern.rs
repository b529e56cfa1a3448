use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use skein_core::frobenius::{barnatan, gadnaot, universal, FrobeniusSystem};
use skein_core::gen;
use skein_core::pattern::{
    forget_projection, state_sum, state_sum_with, tubing_difference, Pattern, PatternError, Vertex, VertexKind,
};
use skein_core::{AlgElem, Exec, RingElem};

fn black(name: &str) -> Vertex {
    Vertex { name: name.into(), kind: VertexKind::Black }
}

fn white(name: &str) -> Vertex {
    Vertex { name: name.into(), kind: VertexKind::White }
}

fn edge(a: &str, b: &str) -> (String, String) {
    (a.into(), b.into())
}

fn x(sys: &FrobeniusSystem) -> AlgElem {
    sys.basis_elem(1)
}

fn render(sys: &FrobeniusSystem, p: &Pattern) -> String {
    sys.fmt_tensor(&state_sum(sys, p).unwrap().terms)
}

#[test]
fn capped_edge_leaves_the_unit() {
    let gn = gadnaot();
    let p = Pattern::new(vec![black("T"), white("w")], vec![edge("T", "w")], vec![("T".into(), gn.unit().clone())])
        .unwrap();
    let result = state_sum(&gn, &p).unwrap();
    assert_eq!(result.symbols, ["T"]);
    assert_eq!(gn.fmt_tensor(&result.terms), "1");
}

#[test]
fn lone_black_vertex_keeps_its_color() {
    let b = barnatan();
    let p = Pattern::new(vec![black("T")], vec![], vec![("T".into(), x(&b))]).unwrap();
    assert_eq!(render(&b, &p), "X");
}

#[test]
fn two_states_on_a_single_edge() {
    let b = barnatan();
    let p =
        Pattern::new(vec![black("S"), black("T")], vec![edge("S", "T")], vec![("S".into(), b.unit().clone())]).unwrap();
    assert_eq!(render(&b, &p), "<1,X> + <X,1>");
    assert_eq!(state_sum(&b, &p).unwrap().terms.num_terms(), 2);
}

#[test]
fn self_loop_is_the_handle() {
    let b = barnatan();
    let loop_ = Pattern::new(vec![black("T")], vec![edge("T", "T")], vec![("T".into(), b.unit().clone())]).unwrap();
    let handle = Pattern::new(vec![black("T")], vec![], vec![("T".into(), b.handle().clone())]).unwrap();
    assert!(tubing_difference(&b, &loop_, &handle).unwrap().is_zero());
    assert!(tubing_difference(&b, &loop_, &loop_).unwrap().is_zero());
}

#[test]
fn tunnel_colors_reduce() {
    // 2^g X^g against its reduction via X^2 = t
    let gn = gadnaot();
    let t = RingElem::var(gn.ring(), "t").unwrap();
    for g in 1..=6u32 {
        let lhs = gn.pow(&x(&gn), g).scale(&gn.ring_int(1 << g));
        let rhs = if g % 2 == 0 {
            gn.unit().scale(&t.pow(g / 2).scale_int(1 << g))
        } else {
            x(&gn).scale(&t.pow((g - 1) / 2).scale_int(1 << g))
        };
        assert_eq!(lhs, rhs, "g = {g}");
        let p1 = Pattern::new(vec![black("S")], vec![], vec![("S".into(), lhs)]).unwrap();
        let p2 = Pattern::new(vec![black("S")], vec![], vec![("S".into(), rhs)]).unwrap();
        assert!(tubing_difference(&gn, &p1, &p2).unwrap().is_zero());
    }
}

#[test]
fn mismatched_symbols_are_rejected() {
    let b = barnatan();
    let p1 = Pattern::new(vec![black("S")], vec![], vec![("S".into(), x(&b))]).unwrap();
    let p2 = Pattern::new(vec![black("T")], vec![], vec![("T".into(), x(&b))]).unwrap();
    assert!(matches!(tubing_difference(&b, &p1, &p2), Err(PatternError::Mismatch { .. })));
}

#[test]
fn construction_errors() {
    let b = barnatan();
    let one = || b.unit().clone();
    assert!(matches!(
        Pattern::new(vec![black("T"), white("T")], vec![], vec![("T".into(), one())]),
        Err(PatternError::DuplicateVertex(_))
    ));
    assert!(matches!(
        Pattern::new(vec![black("T")], vec![edge("T", "u")], vec![("T".into(), one())]),
        Err(PatternError::UnknownVertex(_))
    ));
    assert!(matches!(
        Pattern::new(vec![black("T"), white("w")], vec![], vec![("T".into(), one())]),
        Err(PatternError::MissingColor(_))
    ));
    assert!(matches!(
        Pattern::new(
            vec![black("T"), white("w")],
            vec![edge("T", "w")],
            vec![("T".into(), one()), ("w".into(), one())]
        ),
        Err(PatternError::DuplicateColor(_))
    ));
}

#[test]
fn edge_limit() {
    let b = barnatan();
    let edges = (0..13).map(|_| edge("T", "w")).collect();
    let p = Pattern::new(vec![black("T"), white("w")], edges, vec![("T".into(), b.unit().clone())]).unwrap();
    assert!(matches!(state_sum(&b, &p), Err(PatternError::TooManyEdges { edges: 13 })));
}

#[test]
fn projections() {
    let b = barnatan();
    let one = b.unit().clone();
    let p = Pattern::new(vec![black("T")], vec![], vec![("T".into(), one.clone())]).unwrap();
    assert_eq!(forget_projection(&p), ["T"]);
    let p = Pattern::new(
        vec![black("B"), white("w"), black("A")],
        vec![edge("B", "w"), edge("w", "A")],
        vec![("w".into(), one)],
    )
    .unwrap();
    assert_eq!(forget_projection(&p), ["B", "A"]);
    let empty = Pattern::new(vec![], vec![], vec![]).unwrap();
    assert!(forget_projection(&empty).is_empty());
    assert_eq!(state_sum(&b, &empty).unwrap().terms.scalar_value(b.ring()), b.ring_one());
}

fn colors(sys: &FrobeniusSystem) -> Vec<AlgElem> {
    vec![sys.unit().clone(), x(sys), &x(sys) + sys.unit()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn orientation_invariance(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let u = universal();
        let p = gen::pattern(&mut rng, 3, 2, 5, &colors(&u));
        let mut q = p.clone();
        for k in 0..p.edges().len() {
            if rng.random_bool(0.5) {
                q = q.reverse_edge(k);
            }
        }
        prop_assert_eq!(state_sum(&u, &p).unwrap(), state_sum(&u, &q).unwrap());
    }

    #[test]
    fn anchor_invariance(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let u = universal();
        let p = gen::pattern(&mut rng, 3, 2, 5, &colors(&u));
        let v = rng.random_range(0..p.vertices().len());
        prop_assert_eq!(state_sum(&u, &p).unwrap(), state_sum(&u, &p.move_anchor(v)).unwrap());
    }

    #[test]
    fn linearity_in_colors(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let u = universal();
        let p = gen::pattern(&mut rng, 2, 2, 4, &colors(&u));
        prop_assume!(p.colors().len() == 1);
        let a = gen::alg_elem(&mut rng, &u, 1, 2);
        let b = gen::alg_elem(&mut rng, &u, 1, 2);
        let pa = p.recolor(|_| a.clone());
        let pb = p.recolor(|_| b.clone());
        let pab = p.recolor(|_| &a + &b);
        let sum = state_sum(&u, &pa).unwrap().terms.add(&state_sum(&u, &pb).unwrap().terms);
        prop_assert_eq!(state_sum(&u, &pab).unwrap().terms, sum);
    }

    #[test]
    fn leaf_white_vertex_is_absorbed(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let u = universal();
        let a = gen::alg_elem(&mut rng, &u, 1, 2);
        let with_leaf = Pattern::new(vec![black("T"), white("w")], vec![edge("T", "w")], vec![("T".into(), a.clone())]).unwrap();
        let bare = Pattern::new(vec![black("T")], vec![], vec![("T".into(), a)]).unwrap();
        prop_assert_eq!(state_sum(&u, &with_leaf).unwrap(), state_sum(&u, &bare).unwrap());
    }

    #[test]
    fn execution_policy_is_irrelevant(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let u = universal();
        let p = gen::pattern(&mut rng, 3, 3, 8, &colors(&u));
        prop_assert_eq!(state_sum_with(&u, &p, Exec::Sequential).unwrap(), state_sum_with(&u, &p, Exec::Parallel).unwrap());
    }
}
