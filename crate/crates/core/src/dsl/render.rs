use std::fmt::Write;

use crate::frobenius::{fmt_alg_named, AlgElem, FrobeniusSystem, Structure};

use super::ast::*;

/// Canonical text of a document. Parsing the output yields the same
/// document up to positions, and rendering is idempotent.
pub fn render(doc: &Document) -> String {
    let mut out = String::new();
    for (k, item) in doc.items.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        for c in &item.comments {
            writeln!(out, "#{c}").unwrap();
        }
        render_item(&mut out, item);
    }
    if !doc.trailing.is_empty() {
        if !doc.items.is_empty() {
            out.push('\n');
        }
        for c in &doc.trailing {
            writeln!(out, "#{c}").unwrap();
        }
    }
    out
}

fn render_item(out: &mut String, item: &Item) {
    let name = &item.name;
    match &item.kind {
        ItemKind::Algebra(AlgebraDef::Builtin { builtin, ground, .. }) => {
            write!(out, "algebra {name} = {}", builtin_text(builtin)).unwrap();
            if let Some(g) = ground {
                write!(out, " over {}", ground_text(g)).unwrap();
            }
            out.push_str(";\n");
        }
        ItemKind::Algebra(AlgebraDef::Custom(c)) => {
            let mut lines = vec![format!("ground {}", ground_text(&c.ground))];
            match &c.presentation {
                Presentation::Extension { generator, degree, rhs } => {
                    lines.push(format!("extension {generator}^{degree} = {}", expr(rhs)));
                }
                Presentation::Table { basis, unit, products } => {
                    lines.push(format!("basis {}", basis.join(", ")));
                    lines.push(format!("unit {unit}"));
                    if !products.is_empty() {
                        let entries: Vec<String> =
                            products.iter().map(|(a, b, e)| format!("{a}*{b} = {}", expr(e))).collect();
                        lines.push(format!("mult {}", entries.join(", ")));
                    }
                }
            }
            let counit: Vec<String> = c.counit.iter().map(|(a, b)| format!("{} -> {}", expr(a), expr(b))).collect();
            lines.push(format!("counit {}", counit.join(", ")));
            let pairs: Vec<String> = c.delta1.iter().map(|(u, v)| format!("({}, {})", expr(u), expr(v))).collect();
            lines.push(format!("delta1 {}", pairs.join(" + ")));
            if let Some(degrees) = &c.degrees {
                let entries: Vec<String> = degrees.iter().map(|(n, d)| format!("{n} = {d}")).collect();
                lines.push(format!("degrees {}", entries.join(", ")));
            }
            block(out, &format!("algebra {name}"), &lines);
        }
        ItemKind::Word(w) => {
            write!(out, "word {name} over {}", ref_text(&w.over)).unwrap();
            if let Some(width) = w.width {
                write!(out, " width {width}").unwrap();
            }
            if w.levels.is_empty() {
                out.push_str(" {}\n");
            } else {
                let levels: Vec<String> = w
                    .levels
                    .iter()
                    .map(|l| l.generators.iter().map(gen_text).collect::<Vec<_>>().join(" | "))
                    .collect();
                writeln!(out, " {{ {} }}", levels.join(" ; ")).unwrap();
            }
        }
        ItemKind::Surface(s) => {
            let list = |v: &[usize]| v.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(", ");
            let lines: Vec<String> = s
                .components
                .iter()
                .map(|c| {
                    format!(
                        "comp genus={} in=[{}] out=[{}] color={}",
                        c.genus,
                        list(&c.inputs),
                        list(&c.outputs),
                        expr(&c.color)
                    )
                })
                .collect();
            block(out, &format!("surface {name} over {} ({}, {})", ref_text(&s.over), s.inputs, s.outputs), &lines);
        }
        ItemKind::Combination(c) => {
            let lines: Vec<String> = c
                .terms
                .iter()
                .map(|t| {
                    let names: Vec<&str> = t.surfaces.iter().map(|(n, _)| n.as_str()).collect();
                    match &t.coeff {
                        Some(e) => format!("[{}] {}", expr(e), names.join(" | ")),
                        None => names.join(" | "),
                    }
                })
                .collect();
            block(out, &format!("combination {name} over {}", ref_text(&c.over)), &lines);
        }
        ItemKind::Pattern(p) => {
            let lines: Vec<String> = p
                .statements
                .iter()
                .map(|s| match s {
                    PatternStmt::Black(v, _) => format!("black {v}"),
                    PatternStmt::White(v, _) => format!("white {v}"),
                    PatternStmt::Edge(a, b, _) => format!("edge {a} -> {b}"),
                    PatternStmt::Color(v, e, _) => format!("color comp({v}) = {}", expr(e)),
                })
                .collect();
            block(out, &format!("pattern {name} over {}", ref_text(&p.over)), &lines);
        }
    }
}

fn block(out: &mut String, head: &str, lines: &[String]) {
    if lines.is_empty() {
        writeln!(out, "{head} {{}}").unwrap();
        return;
    }
    writeln!(out, "{head} {{").unwrap();
    for l in lines {
        writeln!(out, "  {l};").unwrap();
    }
    out.push_str("}\n");
}

pub(crate) fn builtin_text(b: &Builtin) -> String {
    match b {
        Builtin::Universal => "universal".into(),
        Builtin::Barnatan => "barnatan".into(),
        Builtin::Gadnaot => "gadnaot".into(),
        Builtin::Group(orders) => {
            format!("group {}", orders.iter().map(|n| format!("Z/{n}")).collect::<Vec<_>>().join(" x "))
        }
    }
}

pub(crate) fn ref_text(r: &AlgebraRef) -> String {
    match r {
        AlgebraRef::Named(n) => n.clone(),
        AlgebraRef::Builtin(b) => builtin_text(b),
    }
}

fn ground_text(g: &Ground) -> String {
    let mut s = "Z".to_string();
    if !g.primes.is_empty() {
        let inv: Vec<String> = g.primes.iter().map(|p| format!("1/{p}")).collect();
        write!(s, "[{}]", inv.join(",")).unwrap();
    }
    if !g.indeterminates.is_empty() {
        write!(s, "[{}]", g.indeterminates.join(",")).unwrap();
    }
    s
}

fn gen_text(g: &GenExpr) -> String {
    match g {
        GenExpr::Plain(p) => p.keyword().to_string(),
        GenExpr::Color(e) => format!("color({})", expr(e)),
    }
}

pub(crate) fn expr(e: &Expr) -> String {
    match e {
        Expr::Int(n, _) => n.to_string(),
        Expr::Var(v, _) => v.clone(),
        Expr::Neg(a, _) => format!("-{}", expr(a)),
        Expr::Add(a, b) => format!("{} + {}", expr(a), expr(b)),
        Expr::Sub(a, b) => format!("{} - {}", expr(a), expr(b)),
        Expr::Mul(a, b) => format!("{}*{}", expr(a), expr(b)),
        Expr::Div(a, b) => format!("{}/{}", expr(a), expr(b)),
        Expr::Pow(a, n, _) => format!("{}^{n}", expr(a)),
        Expr::Paren(a) => format!("({})", expr(a)),
        Expr::Tensor(es, _) => format!("<{}>", es.iter().map(expr).collect::<Vec<_>>().join(",")),
    }
}

fn is_ident(s: &str) -> bool {
    s.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A system as a standalone `algebra` item. Basis names that are not
/// identifiers are replaced by `b0, b1, ...`.
pub fn render_system(sys: &FrobeniusSystem, name: &str) -> String {
    let mut lines = vec![format!("ground {}", sys.ring())];
    let names: Vec<String> = match sys.structure() {
        Structure::Quotient { generator, relation } => {
            lines.push(format!(
                "extension {generator}^{} = {}",
                relation.len(),
                sys.fmt_alg(&AlgElem::new(relation.clone()))
            ));
            sys.basis_names().to_vec()
        }
        Structure::Explicit { basis, .. } => {
            let names: Vec<String> = if basis.iter().all(|b| is_ident(b)) {
                basis.clone()
            } else {
                (0..basis.len()).map(|i| format!("b{i}")).collect()
            };
            let unit_index =
                (0..sys.rank()).find(|&i| sys.basis_elem(i) == *sys.unit()).expect("explicit units are basis elements");
            lines.push(format!("basis {}", names.join(", ")));
            lines.push(format!("unit {}", names[unit_index]));
            let mut entries = Vec::new();
            for i in 0..sys.rank() {
                for j in i..sys.rank() {
                    if i == unit_index || j == unit_index {
                        continue;
                    }
                    entries.push(format!("{}*{} = {}", names[i], names[j], fmt_alg_named(sys.mul_basis(i, j), &names)));
                }
            }
            if !entries.is_empty() {
                lines.push(format!("mult {}", entries.join(", ")));
            }
            names
        }
    };
    let counit: Vec<String> =
        sys.counit_coords().iter().enumerate().map(|(i, c)| format!("{} -> {c}", names[i])).collect();
    lines.push(format!("counit {}", counit.join(", ")));
    let pairs: Vec<String> = sys
        .delta1()
        .iter()
        .map(|(u, v)| format!("({}, {})", fmt_alg_named(u, &names), fmt_alg_named(v, &names)))
        .collect();
    lines.push(format!("delta1 {}", pairs.join(" + ")));
    if let Some(g) = sys.grading() {
        let entries: Vec<String> = g.iter().map(|(n, d)| format!("{n} = {d}")).collect();
        if !entries.is_empty() {
            lines.push(format!("degrees {}", entries.join(", ")));
        }
    }
    let mut out = String::new();
    block(&mut out, &format!("algebra {name}"), &lines);
    out
}
