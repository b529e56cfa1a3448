use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use skein_core::dsl::json::{tensor_from_json, tensor_to_json};
use skein_core::dsl::{self, parse, parse_assignment, render, render_system, DslError, Scope, Value};
use skein_core::frobenius::{barnatan, gadnaot, group, universal, FrobeniusSystem};
use skein_core::gen;
use skein_core::pattern::{Pattern, VertexKind};
use skein_core::skein::ColoredCobordism;
use skein_core::tqft::{CobordismWord, Generator};
use skein_core::{AlgElem, RingDescriptor};

const UNIVERSAL_BY_HAND: &str =
    "algebra U { ground Z[h,t]; extension X^2 = h*X + t; counit 1 -> 0, X -> 1; delta1 (1, X - h) + (X, 1); }";

fn load(src: &str) -> dsl::Workspace {
    dsl::load(src.as_bytes()).unwrap_or_else(|e| panic!("{e}"))
}

fn first_error(src: &str) -> String {
    match dsl::load(src.as_bytes()) {
        Err(DslError::Parse(d)) => d[0].to_string(),
        Err(e) => panic!("domain error {e}"),
        Ok(_) => panic!("accepted {src:?}"),
    }
}

#[test]
fn hand_written_universal_system() {
    let ws = load(UNIVERSAL_BY_HAND);
    assert_eq!(*ws.system("U").unwrap(), universal());
}

#[test]
fn explicit_table_matches_the_group_algebra() {
    let src =
        "algebra G { ground Z; basis e, g; unit e; mult g*g = e; counit e -> 1, g -> 0; delta1 (e, e) + (g, g); }";
    assert_eq!(*load(src).system("G").unwrap(), group(&[2]).unwrap());
}

#[test]
fn word_signature() {
    let ws = load(&format!("{UNIVERSAL_BY_HAND}\nword W over U {{ comult ; mult }}"));
    let (_, w) = ws.word("W").unwrap();
    assert_eq!((w.input_width(), w.output_width()), (1, 1));
    assert_eq!(w.levels(), [vec![Generator::Comult], vec![Generator::Mult]]);
}

#[test]
fn declared_width_mismatch() {
    let src = format!("{UNIVERSAL_BY_HAND}\nword Bad over U width 1 {{ mult }}");
    assert_eq!(first_error(&src), "2:27: error: level 1: needs 2 strands, found 1");
}

#[test]
fn positioned_diagnostics() {
    let cases = [
        ("word W over universal { mult ; bogus }", "1:32: error: unknown generator `bogus`"),
        ("algebra A = universal;\nalgebra A = barnatan;", "2:9: error: `A` is defined twice"),
        ("word W over Nope { id }", "1:6: error: unknown algebra `Nope`"),
        (
            "surface S over barnatan (1, 1) { comp genus=0 in=[2] out=[1] color=1 }",
            "1:34: error: input circle 2 is out of range 1..1",
        ),
        ("surface S over barnatan (1, 0) { comp genus=0 in=[1] out=[] color=Y }", "1:67: error: unknown name `Y`"),
        ("pattern P over barnatan { black T; edge T -> u; color comp(T) = 1 }", "1:36: error: unknown vertex `u`"),
        ("algebra universal = barnatan;", "1:9: error: `universal` is reserved for a built-in algebra"),
        ("word W over barnatan { color(X/2) }", "1:32: error: cannot divide by `2` in Z"),
        ("word W over barnatan { id } $", "1:29: error: unexpected character `$`"),
        (
            "surface S over universal (0, 0) { comp genus=0 in=[] out=[] color=<X,X> }",
            "1:67: error: expected an algebra element, found a tensor of arity 2",
        ),
    ];
    for (src, want) in cases {
        assert_eq!(first_error(src), want, "{src}");
    }
}

#[test]
fn optional_final_semicolons() {
    let a = parse("pattern P over barnatan { black T ; color comp(T) = X }").unwrap();
    let b = parse("pattern P over barnatan { black T; color comp(T) = X; }").unwrap();
    assert_eq!(a.without_positions(), b.without_positions());
}

#[test]
fn canonical_rendering() {
    let src = "#  note\nalgebra B = barnatan over Z[1/2];\nword W over B width 2 {mult|unit;mult}\n\n\n# tail\n";
    let doc = parse(src).unwrap();
    let text = render(&doc);
    assert_eq!(
        text,
        "#  note\nalgebra B = barnatan over Z[1/2];\n\nword W over B width 2 { mult | unit ; mult }\n\n# tail\n"
    );
    assert_eq!(render(&parse(&text).unwrap()), text);
}

#[test]
fn expressions() {
    let u = universal();
    let scope = Scope::of(&u);
    let eval = |s: &str| u.fmt_tensor(&scope.eval(&dsl::parse_expr(s).unwrap()).unwrap());
    assert_eq!(eval("X^2"), "h*X + t");
    assert_eq!(eval("2*X - h"), "2*X - h");
    assert_eq!(eval("(X - h)*X"), "t");
    assert_eq!(eval("<1,X> + <X,1> - h*<1,1>"), "-h*<1,1> + <1,X> + <X,1>");
    assert_eq!(eval("h^2 + 4*t"), "h^2 + 4*t");
    assert_eq!(eval("-(1 - X)"), "X - 1");
    let err = scope.eval(&dsl::parse_expr("<1,X> + X").unwrap()).unwrap_err();
    assert_eq!(err.message, "cannot add tensors of arity 2 and 1");
}

#[test]
fn deep_nesting_is_a_diagnostic() {
    let src = format!("word W over barnatan {{ color({}X{}) }}", "(".repeat(200), ")".repeat(200));
    assert!(first_error(&src).contains("nested too deeply"));
    let src = format!("word W over barnatan {{ color({}X) }}", "-".repeat(200));
    assert!(first_error(&src).contains("nested too deeply"));
}

#[test]
fn failed_algebras_block_their_items() {
    let src = "algebra A { ground Z; extension X^2 = 0; counit 1 -> 1, X -> 0; delta1 (1, X) + (X, 1); }\nword W over A { id }";
    let ws = load(src);
    let err = ws.word("W").unwrap_err();
    assert_eq!(err.exit_code(), 1);
    assert!(ws.get("A").unwrap().system.is_err());
}

#[test]
fn combinations_sum_side_by_side_terms() {
    let src = "surface D over barnatan (0, 1) { comp genus=0 in=[] out=[1] color=1 }\n\
               surface T over barnatan (0, 0) { comp genus=1 in=[] out=[] color=1 }\n\
               combination C over barnatan { [2] D | T ; [-1] T | D }";
    let ws = load(src);
    let (_, c) = ws.combination("C").unwrap();
    assert_eq!(c.signature(), (0, 1));
    let mismatched = "surface D over barnatan (0, 1) { comp genus=0 in=[] out=[1] color=1 }\n\
                      surface T over barnatan (0, 0) { comp genus=1 in=[] out=[] color=1 }\n\
                      combination C over barnatan { D ; T }";
    assert_eq!(first_error(mismatched), "3:35: error: term has signature (0, 0) but the first has (0, 1)");
}

#[test]
fn assignments() {
    let zht = RingDescriptor::polynomial(["h", "t"]).unwrap();
    let a = parse_assignment(&zht, "h=0", None).unwrap();
    assert_eq!(a.target().to_string(), "Z[t]");
    let a = parse_assignment(&zht, "h=0,t=0", None).unwrap();
    assert_eq!(a.target().to_string(), "Z");
    let a = parse_assignment(&zht, "h=2*s, t=1/2", Some("Z[1/2][s]")).unwrap();
    assert_eq!(a.get("h").unwrap().to_string(), "2*s");
    assert!(parse_assignment(&zht, "h=1/3", None).is_err());
    assert!(parse_assignment(&zht, "q=1", None).is_err());
}

fn reload(sys: &FrobeniusSystem) -> FrobeniusSystem {
    let text = render_system(sys, "A");
    let ws = dsl::load(text.as_bytes()).unwrap_or_else(|e| panic!("{e}\n{text}"));
    (*ws.system("A").unwrap()).clone()
}

#[test]
fn systems_render_back() {
    let u = universal();
    for sys in [u.clone(), barnatan(), gadnaot(), group(&[2]).unwrap()] {
        assert_eq!(reload(&sys), sys);
    }
    // `g^2` is not an identifier, so the basis is renamed
    for sys in [group(&[3]).unwrap(), group(&[2, 2]).unwrap()] {
        let back = reload(&sys);
        assert_eq!(back.basis_names()[0], "b0");
        assert_eq!(back.gram_matrix(), sys.gram_matrix());
        assert_eq!(back.handle(), sys.handle());
        assert_eq!(reload(&back), back);
    }
    let twisted = u.twist(&u.scalar(&u.ring_int(-1))).unwrap();
    assert_eq!(reload(&twisted), twisted);
    assert_eq!(
        render_system(&barnatan(), "B"),
        "algebra B {\n  ground Z;\n  extension X^2 = 0;\n  counit 1 -> 0, X -> 1;\n  delta1 (1, X) + (X, 1);\n}\n"
    );
}

fn word_text(sys: &FrobeniusSystem, w: &CobordismWord) -> String {
    let levels: Vec<String> = w
        .levels()
        .iter()
        .map(|l| {
            l.iter()
                .map(|g| match g {
                    Generator::Color(a) => format!("color({})", sys.fmt_alg(a)),
                    other => other.keyword().to_string(),
                })
                .collect::<Vec<_>>()
                .join(" | ")
        })
        .collect();
    format!("word W over universal width {} {{ {} }}", w.input_width(), levels.join(" ; "))
}

fn surface_text(sys: &FrobeniusSystem, c: &ColoredCobordism) -> String {
    let list =
        |s: &std::collections::BTreeSet<usize>| s.iter().map(|k| (k + 1).to_string()).collect::<Vec<_>>().join(",");
    let comps: Vec<String> = c
        .components()
        .iter()
        .map(|k| {
            format!(
                "comp genus={} in=[{}] out=[{}] color={}",
                k.genus,
                list(&k.inputs),
                list(&k.outputs),
                sys.fmt_alg(&k.color)
            )
        })
        .collect();
    format!("surface S over universal ({},{}) {{ {} }}", c.inputs(), c.outputs(), comps.join(" ; "))
}

fn pattern_text(sys: &FrobeniusSystem, p: &Pattern) -> String {
    let mut stmts = Vec::new();
    for v in p.vertices() {
        let kind = if v.kind == VertexKind::Black { "black" } else { "white" };
        stmts.push(format!("{kind} {}", v.name));
    }
    for &(a, b) in p.edges() {
        stmts.push(format!("edge {} -> {}", p.vertices()[a].name, p.vertices()[b].name));
    }
    for (v, a) in p.colors() {
        stmts.push(format!("color comp({}) = {}", p.vertices()[*v].name, sys.fmt_alg(a)));
    }
    format!("pattern P over universal {{ {} }}", stmts.join(" ; "))
}

fn colors(u: &FrobeniusSystem) -> Vec<AlgElem> {
    let x = u.basis_elem(1);
    vec![u.unit().clone(), x.clone(), u.handle().clone(), &x + &u.scalar(&u.ring_int(3))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn engine_values_survive_the_text_format(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let u = universal();
        let colors = colors(&u);
        // an empty level has no text form
        let w = gen::word(&mut rng, 3, 4, &colors);
        let levels = w.levels().iter().filter(|l| !l.is_empty()).cloned().collect();
        let w = CobordismWord::new(w.input_width(), levels).unwrap();
        let c = gen::cobordism(&mut rng, 2, 2, 2, 3, &colors);
        let p = gen::pattern(&mut rng, 2, 2, 4, &colors);
        let src = [word_text(&u, &w), surface_text(&u, &c), pattern_text(&u, &p)].join("\n");
        let doc = parse(&src).unwrap();
        let canonical = render(&doc);
        let again = parse(&canonical).unwrap();
        prop_assert_eq!(again.without_positions(), doc.without_positions());
        prop_assert_eq!(render(&again), canonical.clone());
        let ws = load(&canonical);
        prop_assert_eq!(ws.word("W").unwrap().1, &w);
        prop_assert_eq!(ws.surface("S").unwrap().1, &c);
        prop_assert_eq!(ws.pattern("P").unwrap().1, &p);
        prop_assert!(matches!(ws.get("W").unwrap().value, Some(Value::Word(_))));
    }

    #[test]
    fn tensors_survive_json(seed in any::<u64>(), arity in 0usize..4) {
        let mut rng = StdRng::seed_from_u64(seed);
        let u = universal();
        let t = gen::tensor(&mut rng, &u, arity, 6);
        let text = serde_json::to_string(&tensor_to_json(&u, &t)).unwrap();
        let back = tensor_from_json(&u, &serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn rendered_tensors_parse_back(seed in any::<u64>(), arity in 0usize..4) {
        let mut rng = StdRng::seed_from_u64(seed);
        let u = universal();
        let t = gen::tensor(&mut rng, &u, arity, 6);
        let e = dsl::parse_expr(&u.fmt_tensor(&t)).unwrap();
        let back = Scope::of(&u).eval_arity(&e, arity);
        prop_assert_eq!(back.unwrap(), t);
    }

    #[test]
    fn arbitrary_bytes_never_panic(bytes in proptest::collection::vec(any::<u8>(), 0..200)) {
        if let Err(DslError::Parse(d)) = dsl::load(&bytes) {
            prop_assert!(!d.is_empty());
            prop_assert!(d.iter().all(|x| x.pos.line >= 1 && x.pos.col >= 1));
        }
    }

    #[test]
    fn token_soup_never_panics(tokens in proptest::collection::vec(
        prop::sample::select(vec![
            "algebra", "word", "surface", "pattern", "combination", "over", "universal", "barnatan", "group", "Z", "/",
            "x", "2", "{", "}", "(", ")", "[", "]", "<", ">", ",", ";", "|", "=", "+", "-", "*", "^", "->", "A", "X",
            "comp", "genus", "in", "out", "color", "black", "white", "edge", "id", "mult", "comult", "width", "\n#c\n",
            "ground", "extension", "counit", "delta1", "basis", "unit", "mult", "degrees", "h", "t", "0", "1",
        ]),
        0..60,
    )) {
        let src = tokens.join(" ");
        match parse(&src) {
            Ok(doc) => {
                let text = render(&doc);
                prop_assert_eq!(parse(&text).unwrap().without_positions(), doc.without_positions());
                let _ = dsl::elaborate(&doc);
            }
            Err(d) => prop_assert!(!d.is_empty()),
        }
    }
}
