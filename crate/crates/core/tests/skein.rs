use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use skein_core::frobenius::{barnatan, gadnaot, group, universal, FrobeniusSystem, Grading, GradingError};
use skein_core::gen;
use skein_core::ring::{Assignment, RingDescriptor};
use skein_core::skein::{
    cobordism_normal_form, compose, degree, from_linear_map, identity, monoidal_product, nonseparating_neck_cut,
    normal_form, normal_form_with, separating_neck_cut, skein_equal, sphere_relation, to_linear_map, ColoredCobordism,
    Component, NeckSplit, SkeinElement, SkeinError, SurfaceCombination,
};
use skein_core::tqft::{apply_word, word_to_map, word_to_surface, CobordismWord, Generator};
use skein_core::{AlgElem, Exec, RingElem, TensorElem};

fn x(sys: &FrobeniusSystem) -> AlgElem {
    sys.basis_elem(1)
}

fn set(items: &[usize]) -> BTreeSet<usize> {
    items.iter().copied().collect()
}

fn comp(genus: u32, inputs: &[usize], outputs: &[usize], color: AlgElem) -> Component {
    Component { inputs: set(inputs), outputs: set(outputs), genus, color }
}

fn single(sys: &FrobeniusSystem, c: ColoredCobordism) -> SurfaceCombination {
    SurfaceCombination::single(c, sys.ring_one())
}

fn closed(sys: &FrobeniusSystem, genus: u32, color: AlgElem) -> SurfaceCombination {
    single(sys, ColoredCobordism::new(0, 0, vec![Component::closed(genus, color)]).unwrap())
}

fn closed_value(sys: &FrobeniusSystem, genus: u32) -> RingElem {
    normal_form(sys, &closed(sys, genus, sys.unit().clone())).tensor().scalar_value(sys.ring())
}

/// `unit ; (comult ; mult)^g ; counit` evaluated directly.
fn closed_word_value(sys: &FrobeniusSystem, genus: u32) -> RingElem {
    use Generator::*;
    let mut levels = vec![vec![Unit]];
    for _ in 0..genus {
        levels.push(vec![Comult]);
        levels.push(vec![Mult]);
    }
    levels.push(vec![Counit]);
    let w = CobordismWord::new(0, levels).unwrap();
    apply_word(sys, &w, &TensorElem::scalar(sys.ring_one())).unwrap().scalar_value(sys.ring())
}

#[test]
fn universal_closed_surfaces() {
    let u = universal();
    let h = RingElem::var(u.ring(), "h").unwrap();
    let t = RingElem::var(u.ring(), "t").unwrap();
    let g3 = (&(&h * &h) + &t.scale_int(4)).scale_int(2);
    let expected = [u.ring_zero(), u.ring_int(2), u.ring_zero(), g3];
    for (g, want) in expected.iter().enumerate() {
        assert_eq!(&closed_value(&u, g as u32), want, "genus {g}");
        assert_eq!(&closed_word_value(&u, g as u32), want, "word oracle genus {g}");
    }
}

#[test]
fn gadnaot_closed_surfaces() {
    let gn = gadnaot();
    let t = RingElem::var(gn.ring(), "t").unwrap();
    for g in 0..=7u32 {
        let want = if g % 2 == 0 { gn.ring_zero() } else { t.pow((g - 1) / 2).scale_int(1 << g) };
        assert_eq!(closed_value(&gn, g), want, "genus {g}");
    }
}

#[test]
fn barnatan_cylinder() {
    let b = barnatan();
    let nf = identity(&b, 1);
    assert_eq!(nf.signature(), (1, 1));
    assert_eq!(b.fmt_tensor(nf.tensor()), "<1,X> + <X,1>");
}

#[test]
fn sphere_relation_instance() {
    let u = universal();
    let a = &x(&u) + &u.scalar(&RingElem::var(u.ring(), "t").unwrap());
    let s = ColoredCobordism::new(1, 2, vec![comp(1, &[0], &[0, 1], x(&u))]).unwrap();
    let with_sphere = s.disjoint_union(&ColoredCobordism::new(0, 0, vec![Component::closed(0, a.clone())]).unwrap());
    let scaled = SurfaceCombination::single(s, u.counit(&a));
    assert!(skein_equal(&u, &single(&u, with_sphere), &scaled).unwrap());
}

#[test]
fn holed_torus_is_a_disk_colored_by_the_handle() {
    for sys in [universal(), barnatan(), group(&[3]).unwrap()] {
        let a = sys.basis_elem(1);
        let torus = single(&sys, ColoredCobordism::new(0, 1, vec![comp(1, &[], &[0], a.clone())]).unwrap());
        let disk =
            single(&sys, ColoredCobordism::new(0, 1, vec![comp(0, &[], &[0], sys.mul(sys.handle(), &a))]).unwrap());
        assert!(skein_equal(&sys, &torus, &disk).unwrap());
    }
}

#[test]
fn inessential_neck() {
    let u = universal();
    let a = &x(&u) + &u.scalar(&RingElem::var(u.ring(), "h").unwrap());
    let expanded = u.delta1().iter().fold(u.zero(), |acc, (p, q)| &acc + &u.mul(&a, p).scale(&u.counit(q)));
    let disk = |c: AlgElem| single(&u, ColoredCobordism::new(0, 1, vec![comp(0, &[], &[0], c)]).unwrap());
    assert!(skein_equal(&u, &disk(a), &disk(expanded)).unwrap());
}

#[test]
fn signature_mismatch_is_an_error() {
    let u = universal();
    let a = single(&u, ColoredCobordism::cylinders(&u, 1));
    let b = single(&u, ColoredCobordism::cylinders(&u, 2));
    assert!(matches!(skein_equal(&u, &a, &b), Err(SkeinError::Signature { .. })));
    assert!(matches!(compose(&u, &identity(&u, 2), &identity(&u, 1)), Err(SkeinError::Compose { .. })));
}

#[test]
fn partitions_are_validated() {
    let u = universal();
    let one = u.unit().clone();
    assert!(ColoredCobordism::new(2, 0, vec![comp(0, &[0], &[], one.clone())]).is_err());
    assert!(
        ColoredCobordism::new(1, 0, vec![comp(0, &[0], &[], one.clone()), comp(0, &[0], &[], one.clone())]).is_err()
    );
    assert!(ColoredCobordism::new(0, 1, vec![comp(0, &[], &[1], one)]).is_err());
}

#[test]
fn compose_examples() {
    let b = barnatan();
    let cyl = identity(&b, 1);
    assert_eq!(compose(&b, &cyl, &cyl).unwrap(), cyl);

    let u = universal();
    let unit_disk =
        cobordism_normal_form(&u, &ColoredCobordism::new(0, 1, vec![comp(0, &[], &[0], u.unit().clone())]).unwrap());
    let counit_disk =
        cobordism_normal_form(&u, &ColoredCobordism::new(1, 0, vec![comp(0, &[0], &[], u.unit().clone())]).unwrap());
    let sphere = compose(&u, &counit_disk, &unit_disk).unwrap();
    assert_eq!(sphere.signature(), (0, 0));
    assert!(sphere.tensor().is_zero());
}

#[test]
fn cylinders_are_idempotent_in_all_builtins() {
    for sys in [universal(), barnatan(), gadnaot(), group(&[2]).unwrap()] {
        for n in 0..3 {
            let id = identity(&sys, n);
            assert_eq!(compose(&sys, &id, &id).unwrap(), id, "{} width {n}", sys.name());
        }
    }
}

#[test]
fn monoidal_product_examples() {
    let u = universal();
    let disk =
        |c: AlgElem| cobordism_normal_form(&u, &ColoredCobordism::new(0, 1, vec![comp(0, &[], &[0], c)]).unwrap());
    let a = x(&u);
    let b = &x(&u) + u.unit();
    let prod = monoidal_product(&disk(a.clone()), &disk(b.clone()));
    assert_eq!(prod.signature(), (0, 2));
    // a disk colored c has normal form c itself
    assert_eq!(prod.tensor(), &TensorElem::pure(u.ring(), &[&a, &b]));

    let empty = SkeinElement::new(0, 0, TensorElem::scalar(u.ring_one())).unwrap();
    let f = identity(&u, 2);
    assert_eq!(monoidal_product(&f, &empty), f);
    assert_eq!(monoidal_product(&empty, &f), f);
}

#[test]
fn degrees() {
    let b = barnatan().with_grading(Some(Grading::new([("X".to_string(), 1)])));
    let one = b.unit().clone();
    let torus = ColoredCobordism::new(0, 0, vec![Component::closed(1, one.clone())]).unwrap();
    let sphere = ColoredCobordism::new(0, 0, vec![Component::closed(0, one.clone())]).unwrap();
    let disk = ColoredCobordism::new(0, 1, vec![comp(0, &[], &[0], x(&b))]).unwrap();
    assert_eq!(degree(&b, &torus), Ok(0));
    assert_eq!(degree(&b, &sphere), Ok(-2));
    assert_eq!(degree(&b, &disk), Ok(0));
    assert_eq!(degree(&b, &torus.disjoint_union(&disk)), Ok(0));
    let mixed = ColoredCobordism::new(0, 1, vec![comp(0, &[], &[0], &x(&b) + &one)]).unwrap();
    assert!(matches!(degree(&b, &mixed), Err(GradingError::Inhomogeneous(_))));
    assert!(matches!(degree(&barnatan(), &disk), Err(GradingError::Ungraded(_))));
}

#[test]
fn rewrite_errors() {
    let u = universal();
    let torus = ColoredCobordism::new(0, 0, vec![Component::closed(1, u.unit().clone())]).unwrap();
    assert!(sphere_relation(&u, &torus, 0).is_err());
    assert!(sphere_relation(&u, &torus, 3).is_err());
    let disk = ColoredCobordism::new(0, 1, vec![comp(0, &[], &[0], u.unit().clone())]).unwrap();
    assert!(nonseparating_neck_cut(&u, &disk, 0).is_err());
    let bad = NeckSplit { genus: 2, inputs: set(&[]), outputs: set(&[]) };
    assert!(separating_neck_cut(&u, &disk, 0, &bad).is_err());
}

/// Surfaces produced by closed words agree with their explicit normal form.
#[test]
fn closed_words_agree_with_normal_forms() {
    let u = universal();
    for g in 0..4 {
        assert_eq!(closed_word_value(&u, g), closed_value(&u, g));
    }
}

fn colors(sys: &FrobeniusSystem) -> Vec<AlgElem> {
    vec![sys.unit().clone(), x(sys)]
}

fn random_surface(rng: &mut StdRng, sys: &FrobeniusSystem, max_in: usize, max_out: usize) -> ColoredCobordism {
    let (r, s) = (rng.random_range(0..=max_in), rng.random_range(0..=max_out));
    gen::cobordism(rng, r, s, 2, 3, &colors(sys))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn words_agree_with_surface_normal_forms(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        for sys in [universal(), barnatan()] {
            let w = gen::word(&mut rng, 4, 8, &colors(&sys));
            let surface = word_to_surface(&sys, &w).unwrap();
            let nf = cobordism_normal_form(&sys, &surface);
            prop_assert_eq!(to_linear_map(&sys, &nf), word_to_map(&sys, &w).unwrap());
        }
    }

    #[test]
    fn sphere_relation_is_sound(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let u = universal();
        let base = random_surface(&mut rng, &u, 2, 2);
        let a = gen::alg_elem(&mut rng, &u, 2, 2);
        let c = base.disjoint_union(&ColoredCobordism::new(0, 0, vec![Component::closed(0, a)]).unwrap());
        let idx = c.components().iter().position(|k| k.is_closed() && k.genus == 0).unwrap();
        let rewritten = sphere_relation(&u, &c, idx).unwrap();
        prop_assert_eq!(normal_form(&u, &rewritten), cobordism_normal_form(&u, &c));
    }

    #[test]
    fn separating_neck_cut_is_sound(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let u = universal();
        let c = random_surface(&mut rng, &u, 3, 3);
        let idx = rng.random_range(0..c.components().len());
        let target = &c.components()[idx];
        let split = NeckSplit {
            genus: rng.random_range(0..=target.genus),
            inputs: target.inputs.iter().copied().filter(|_| rng.random_bool(0.5)).collect(),
            outputs: target.outputs.iter().copied().filter(|_| rng.random_bool(0.5)).collect(),
        };
        let rewritten = separating_neck_cut(&u, &c, idx, &split).unwrap();
        prop_assert_eq!(normal_form(&u, &rewritten), cobordism_normal_form(&u, &c));
    }

    #[test]
    fn nonseparating_neck_cut_is_sound(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let sys = if rng.random_bool(0.5) { universal() } else { group(&[3]).unwrap() };
        let c = gen::cobordism(&mut rng, 2, 1, 3, 2, &colors(&sys));
        let Some(idx) = c.components().iter().position(|k| k.genus > 0) else { return Ok(()); };
        let rewritten = nonseparating_neck_cut(&sys, &c, idx).unwrap();
        prop_assert_eq!(normal_form(&sys, &rewritten), cobordism_normal_form(&sys, &c));
    }

    #[test]
    fn pair_choice_does_not_change_normal_forms(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let u = universal();
        // (u_1, v_1) -> (u_1 + k u_2, v_1), (u_2, v_2) -> (u_2, v_2 - k v_1)
        let k = u.ring_int(rng.random_range(-3..=3));
        let p = u.delta1();
        let pairs = vec![
            (&p[0].0 + &p[1].0.scale(&k), p[0].1.clone()),
            (p[1].0.clone(), &p[1].1 - &p[0].1.scale(&k)),
        ];
        let other = u.with_pairs(pairs).unwrap();
        let c = random_surface(&mut rng, &u, 2, 2);
        prop_assert_eq!(cobordism_normal_form(&other, &c), cobordism_normal_form(&u, &c));
    }

    #[test]
    fn disjoint_union_is_monoidal_product(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let u = universal();
        let c1 = random_surface(&mut rng, &u, 2, 2);
        let c2 = random_surface(&mut rng, &u, 2, 2);
        prop_assert_eq!(
            cobordism_normal_form(&u, &c1.disjoint_union(&c2)),
            monoidal_product(&cobordism_normal_form(&u, &c1), &cobordism_normal_form(&u, &c2))
        );
    }

    #[test]
    fn compose_matches_linear_maps(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let sys = if rng.random_bool(0.5) { universal() } else { barnatan() };
        let (r, s, t, q) = (rng.random_range(0..=2), rng.random_range(0..=2), rng.random_range(0..=2), rng.random_range(0..=2));
        let f = SkeinElement::new(r, s, gen::tensor(&mut rng, &sys, r + s, 4)).unwrap();
        let g = SkeinElement::new(s, t, gen::tensor(&mut rng, &sys, s + t, 4)).unwrap();
        let h = SkeinElement::new(t, q, gen::tensor(&mut rng, &sys, t + q, 4)).unwrap();
        let gf = compose(&sys, &g, &f).unwrap();
        prop_assert_eq!(to_linear_map(&sys, &gf), to_linear_map(&sys, &f).then(&to_linear_map(&sys, &g)));
        prop_assert_eq!(compose(&sys, &h, &gf).unwrap(), compose(&sys, &compose(&sys, &h, &g).unwrap(), &f).unwrap());
        prop_assert_eq!(compose(&sys, &f, &identity(&sys, r)).unwrap(), f.clone());
        prop_assert_eq!(compose(&sys, &identity(&sys, s), &f).unwrap(), f);
    }

    #[test]
    fn specialization_commutes_with_normal_forms(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let u = universal();
        let zt = RingDescriptor::polynomial(["t"]).unwrap();
        let assignment = Assignment::new(&zt, [
            ("h".to_string(), RingElem::zero(&zt)),
            ("t".to_string(), RingElem::var(&zt, "t").unwrap()),
        ]).unwrap();
        let (gn, mapper) = u.specialize(&assignment).unwrap();
        let c = random_surface(&mut rng, &u, 2, 2);
        let mapped_components: Vec<Component> = c.components().iter().map(|k| Component {
            color: mapper.map_alg(&k.color).unwrap(),
            ..k.clone()
        }).collect();
        let c_gn = ColoredCobordism::new(c.inputs(), c.outputs(), mapped_components).unwrap();
        let over_u = cobordism_normal_form(&u, &c);
        prop_assert_eq!(mapper.map_tensor(over_u.tensor()).unwrap(), cobordism_normal_form(&gn, &c_gn).tensor().clone());
    }

    #[test]
    fn execution_policy_is_irrelevant(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let u = universal();
        let mut combo = SurfaceCombination::zero(1, 2);
        for _ in 0..4 {
            let c = gen::cobordism(&mut rng, 1, 2, 2, 3, &colors(&u));
            combo.add_term(c, gen::ring_elem(&mut rng, u.ring(), 1, 2)).unwrap();
        }
        prop_assert_eq!(normal_form_with(&u, &combo, Exec::Sequential), normal_form_with(&u, &combo, Exec::Parallel));
    }
}

#[test]
fn maps_determine_skein_elements() {
    for sys in [universal(), barnatan(), group(&[2]).unwrap()] {
        for r in 0..=2 {
            for s in 0..=(4 - r).min(2) {
                for k in 0..sys.rank().pow((r + s) as u32) {
                    let slots = skein_core::frobenius::tuple_at(sys.rank(), r + s, k);
                    let x = SkeinElement::new(r, s, TensorElem::basis(slots, sys.ring_one())).unwrap();
                    assert_eq!(from_linear_map(&sys, &to_linear_map(&sys, &x)), x);
                }
            }
        }
    }
}
