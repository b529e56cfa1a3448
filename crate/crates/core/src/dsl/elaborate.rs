use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use indexmap::IndexMap;

use crate::frobenius::{
    barnatan_over, gadnaot_over, group_over, quotient_table, rank_two, universal, AlgElem, FrobeniusSystem, Grading,
    Structure, SystemError, SystemSpec,
};
use crate::pattern::{Pattern, Vertex, VertexKind};
use crate::ring::{Assignment, RingDescriptor, RingElem};
use crate::skein::{ColoredCobordism, Component, SurfaceCombination};
use crate::tqft::{CobordismWord, Generator};

use super::ast::*;
use super::eval::Scope;
use super::parser::{declared_width, Parser};
use super::render::{builtin_text, ref_text};
use super::{Diagnostic, DslError, Pos};

/// An elaborated item.
#[derive(Clone, Debug)]
pub enum Value {
    Algebra,
    Word(CobordismWord),
    Surface(ColoredCobordism),
    Combination(SurfaceCombination),
    Pattern(Pattern),
}

#[derive(Clone, Debug)]
pub struct Entry {
    /// Display name of the algebra the item lives over.
    pub algebra: String,
    /// The verified algebra, or why verification failed.
    pub system: Result<Arc<FrobeniusSystem>, SystemError>,
    /// `None` when the algebra failed.
    pub value: Option<Value>,
}

/// All items of a document, in source order.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    entries: IndexMap<String, Entry>,
}

impl Workspace {
    pub fn entries(&self) -> impl Iterator<Item = (&String, &Entry)> {
        self.entries.iter()
    }

    pub fn get(&self, name: &str) -> Result<&Entry, DslError> {
        self.entries.get(name).ok_or_else(|| DslError::domain(format!("no item named `{name}`")))
    }

    /// A named algebra or a built-in written as in source (`group Z/2`).
    pub fn system(&self, name: &str) -> Result<Arc<FrobeniusSystem>, DslError> {
        if let Some(entry) = self.entries.get(name) {
            if !matches!(entry.value, Some(Value::Algebra) | None) {
                return Err(DslError::domain(format!("`{name}` is not an algebra")));
            }
            return entry.system.clone().map_err(|e| DslError::domain(format!("algebra `{name}` is invalid: {e}")));
        }
        match parse_builtin(name) {
            Some(b) => builtin(&b).map(Arc::new).map_err(DslError::domain),
            None => Err(DslError::domain(format!("no item named `{name}`"))),
        }
    }

    fn value(&self, name: &str) -> Result<(Arc<FrobeniusSystem>, &Value), DslError> {
        let entry = self.get(name)?;
        let sys = entry.system.clone().map_err(|e| {
            if entry.algebra == name {
                DslError::domain(format!("algebra `{name}` is invalid: {e}"))
            } else {
                DslError::domain(format!("algebra `{}` of `{name}` is invalid: {e}", entry.algebra))
            }
        })?;
        Ok((sys, entry.value.as_ref().expect("values exist for valid algebras")))
    }

    pub fn word(&self, name: &str) -> Result<(Arc<FrobeniusSystem>, &CobordismWord), DslError> {
        match self.value(name)? {
            (sys, Value::Word(w)) => Ok((sys, w)),
            _ => Err(DslError::domain(format!("`{name}` is not a word"))),
        }
    }

    /// A surface or combination as a linear combination of surfaces.
    pub fn combination(&self, name: &str) -> Result<(Arc<FrobeniusSystem>, SurfaceCombination), DslError> {
        match self.value(name)? {
            (sys, Value::Surface(s)) => {
                let one = sys.ring_one();
                Ok((sys, SurfaceCombination::single(s.clone(), one)))
            }
            (sys, Value::Combination(c)) => Ok((sys, c.clone())),
            _ => Err(DslError::domain(format!("`{name}` is not a surface or combination"))),
        }
    }

    pub fn surface(&self, name: &str) -> Result<(Arc<FrobeniusSystem>, &ColoredCobordism), DslError> {
        match self.value(name)? {
            (sys, Value::Surface(s)) => Ok((sys, s)),
            _ => Err(DslError::domain(format!("`{name}` is not a surface"))),
        }
    }

    pub fn pattern(&self, name: &str) -> Result<(Arc<FrobeniusSystem>, &Pattern), DslError> {
        match self.value(name)? {
            (sys, Value::Pattern(p)) => Ok((sys, p)),
            _ => Err(DslError::domain(format!("`{name}` is not a pattern"))),
        }
    }
}

/// Parse a built-in algebra name such as `universal` or `group Z/2 x Z/3`.
pub fn parse_builtin(text: &str) -> Option<Builtin> {
    let mut p = Parser::new(text).ok()?;
    let b = p.builtin().ok()??;
    p.finish().ok()?;
    Some(b)
}

fn builtin(b: &Builtin) -> Result<FrobeniusSystem, SystemError> {
    let sys = match b {
        Builtin::Universal => universal(),
        Builtin::Barnatan => barnatan_over(&RingDescriptor::integers()),
        Builtin::Gadnaot => gadnaot_over(&RingDescriptor::polynomial(["t"])?)?,
        Builtin::Group(orders) => group_over(&RingDescriptor::integers(), orders)?,
    };
    Ok(sys.with_name(builtin_text(b)))
}

fn builtin_over(b: &Builtin, ring: &Arc<RingDescriptor>, name: &str, pos: Pos) -> Result<FrobeniusSystem, Diagnostic> {
    let var = |v: &str| {
        RingElem::var(ring, v).map_err(|_| {
            Diagnostic::error(pos, format!("`{}` needs an indeterminate `{v}` in its ground ring", builtin_text(b)))
        })
    };
    let sys = match b {
        Builtin::Universal => rank_two(name, ring, var("h")?, var("t")?),
        Builtin::Barnatan => Ok(barnatan_over(ring)),
        Builtin::Gadnaot => {
            var("t")?;
            gadnaot_over(ring)
        }
        Builtin::Group(orders) => group_over(ring, orders),
    };
    sys.map(|s| s.with_name(name)).map_err(|e| Diagnostic::error(pos, e.to_string()))
}

fn ground_ring(g: &Ground) -> Result<Arc<RingDescriptor>, Diagnostic> {
    RingDescriptor::new(g.indeterminates.clone(), g.primes.iter().copied())
        .map_err(|e| Diagnostic::error(g.pos, e.to_string()))
}

/// Build a custom algebra. Source-level problems are diagnostics; axiom
/// failures are returned inside the inner result.
fn custom(name: &str, c: &CustomAlgebra) -> Result<Result<FrobeniusSystem, SystemError>, Diagnostic> {
    let ring = ground_ring(&c.ground)?;
    let clash = |n: &str| -> Result<(), Diagnostic> {
        if ring.index_of(n).is_some() {
            return Err(Diagnostic::error(c.pos, format!("`{n}` is both an indeterminate and a basis element")));
        }
        Ok(())
    };
    let (structure, names, unit, table) = match &c.presentation {
        Presentation::Extension { generator, degree, rhs } => {
            clash(generator)?;
            let n = *degree as usize;
            let names: Vec<String> = (0..n)
                .map(|k| match k {
                    0 => "1".to_string(),
                    1 => generator.clone(),
                    _ => format!("{generator}^{k}"),
                })
                .collect();
            let unit = AlgElem::basis(&ring, n, 0);
            let relation = Scope::truncated(&ring, &names, &unit).eval_alg(rhs)?.coords().to_vec();
            let (names, unit, table) =
                quotient_table(&ring, generator, &relation).map_err(|e| Diagnostic::error(c.pos, e.to_string()))?;
            (Structure::Quotient { generator: generator.clone(), relation }, names, unit, table)
        }
        Presentation::Table { basis, unit, products } => {
            let n = basis.len();
            let mut seen = BTreeSet::new();
            for b in basis {
                clash(b)?;
                if !seen.insert(b) {
                    return Err(Diagnostic::error(c.pos, format!("basis element `{b}` listed twice")));
                }
            }
            let u = basis
                .iter()
                .position(|b| b == unit)
                .ok_or_else(|| Diagnostic::error(c.pos, format!("unit `{unit}` is not a basis element")))?;
            let unit_elem = AlgElem::basis(&ring, n, u);
            let scope = Scope::linear(&ring, basis, &unit_elem);
            let mut given: BTreeMap<(usize, usize), AlgElem> = BTreeMap::new();
            for (a, b, e) in products {
                let index = |x: &String| {
                    basis
                        .iter()
                        .position(|y| y == x)
                        .ok_or_else(|| Diagnostic::error(e.pos(), format!("`{x}` is not a basis element")))
                };
                let (i, j) = (index(a)?, index(b)?);
                let value = scope.eval_alg(e)?;
                if given.insert((i, j), value).is_some() {
                    return Err(Diagnostic::error(e.pos(), format!("product {a}*{b} given twice")));
                }
            }
            let mut table = Vec::with_capacity(n);
            for i in 0..n {
                let mut row = Vec::with_capacity(n);
                for j in 0..n {
                    let entry = if i == u {
                        given.get(&(i, j)).cloned().unwrap_or_else(|| AlgElem::basis(&ring, n, j))
                    } else if j == u {
                        given.get(&(i, j)).cloned().unwrap_or_else(|| AlgElem::basis(&ring, n, i))
                    } else if let Some(v) = given.get(&(i, j)).or_else(|| given.get(&(j, i))) {
                        v.clone()
                    } else {
                        return Err(Diagnostic::error(c.pos, format!("missing product {}*{}", basis[i], basis[j])));
                    };
                    row.push(entry);
                }
                table.push(row);
            }
            let structure = Structure::Explicit { basis: basis.clone(), unit: unit_elem.clone(), table: table.clone() };
            (structure, basis.clone(), unit_elem, table)
        }
    };
    let n = names.len();
    let scope = Scope::table(&ring, &names, &unit, &table);
    let mut counit: Vec<Option<RingElem>> = vec![None; n];
    for (lhs, rhs) in &c.counit {
        let i = scope.eval_basis(lhs)?;
        if counit[i].replace(scope.eval_scalar(rhs)?).is_some() {
            return Err(Diagnostic::error(lhs.pos(), format!("counit of `{}` given twice", names[i])));
        }
    }
    let counit = counit
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| Diagnostic::error(c.pos, format!("counit of `{}` is missing", names[i]))))
        .collect::<Result<Vec<_>, _>>()?;
    let delta1 = c
        .delta1
        .iter()
        .map(|(u, v)| Ok((scope.eval_alg(u)?, scope.eval_alg(v)?)))
        .collect::<Result<Vec<_>, Diagnostic>>()?;
    let grading = match &c.degrees {
        None => None,
        Some(entries) => {
            let generator = match &c.presentation {
                Presentation::Extension { generator, .. } => Some(generator),
                Presentation::Table { .. } => None,
            };
            for (k, _) in entries {
                let known = ring.index_of(k).is_some() || generator == Some(k) || names.contains(k);
                if !known {
                    return Err(Diagnostic::error(c.pos, format!("degree given for unknown name `{k}`")));
                }
            }
            Some(Grading::new(entries.iter().cloned()))
        }
    };
    Ok(FrobeniusSystem::new(SystemSpec { name: name.to_string(), ring, structure, counit, delta1, grading }))
}

struct Elaborator {
    algebras: HashMap<String, Result<Arc<FrobeniusSystem>, SystemError>>,
}

impl Elaborator {
    fn resolve(&mut self, r: &AlgebraRef) -> (String, Result<Arc<FrobeniusSystem>, SystemError>) {
        let key = ref_text(r);
        let sys = match r {
            AlgebraRef::Named(n) => self.algebras[n].clone(),
            AlgebraRef::Builtin(b) => {
                self.algebras.entry(key.clone()).or_insert_with(|| builtin(b).map(Arc::new)).clone()
            }
        };
        (key, sys)
    }
}

fn word(sys: &FrobeniusSystem, w: &WordDef, pos: Pos) -> Result<CobordismWord, Diagnostic> {
    let scope = Scope::of(sys);
    let levels = w
        .levels
        .iter()
        .map(|l| {
            l.generators
                .iter()
                .map(|g| match g {
                    GenExpr::Plain(p) => Ok(p.clone()),
                    GenExpr::Color(e) => Ok(Generator::Color(scope.eval_alg(e)?)),
                })
                .collect::<Result<Vec<_>, Diagnostic>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    CobordismWord::new(declared_width(w), levels).map_err(|e| Diagnostic::error(pos, e.to_string()))
}

fn surface(sys: &FrobeniusSystem, s: &SurfaceDef, pos: Pos) -> Result<ColoredCobordism, Diagnostic> {
    let scope = Scope::of(sys);
    let comps = s
        .components
        .iter()
        .map(|c| {
            Ok(Component {
                inputs: c.inputs.iter().map(|k| k - 1).collect(),
                outputs: c.outputs.iter().map(|k| k - 1).collect(),
                genus: c.genus,
                color: scope.eval_alg(&c.color)?,
            })
        })
        .collect::<Result<Vec<_>, Diagnostic>>()?;
    ColoredCobordism::new(s.inputs, s.outputs, comps).map_err(|e| Diagnostic::error(pos, e.to_string()))
}

fn pattern(sys: &FrobeniusSystem, p: &PatternDef, pos: Pos) -> Result<Pattern, Diagnostic> {
    let scope = Scope::of(sys);
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut colors = Vec::new();
    for s in &p.statements {
        match s {
            PatternStmt::Black(n, _) => vertices.push(Vertex { name: n.clone(), kind: VertexKind::Black }),
            PatternStmt::White(n, _) => vertices.push(Vertex { name: n.clone(), kind: VertexKind::White }),
            PatternStmt::Edge(a, b, _) => edges.push((a.clone(), b.clone())),
            PatternStmt::Color(v, e, _) => colors.push((v.clone(), scope.eval_alg(e)?)),
        }
    }
    Pattern::new(vertices, edges, colors).map_err(|e| Diagnostic::error(pos, e.to_string()))
}

/// Turn a parsed document into engine values. Source problems (unknown
/// names in expressions, ill-typed expressions, malformed definitions) are
/// diagnostics; algebras failing their axioms are kept as errors so that
/// `check` can report them.
pub fn elaborate(doc: &Document) -> Result<Workspace, Vec<Diagnostic>> {
    let mut el = Elaborator { algebras: HashMap::new() };
    let mut diags = Vec::new();
    for item in &doc.items {
        let ItemKind::Algebra(def) = &item.kind else { continue };
        let built = match def {
            AlgebraDef::Builtin { builtin: b, ground: None, .. } => Ok(builtin(b).map(|s| s.with_name(&item.name))),
            AlgebraDef::Builtin { builtin: b, ground: Some(g), pos } => {
                ground_ring(g).and_then(|ring| builtin_over(b, &ring, &item.name, *pos)).map(Ok)
            }
            AlgebraDef::Custom(c) => custom(&item.name, c),
        };
        match built {
            Ok(sys) => {
                el.algebras.insert(item.name.clone(), sys.map(Arc::new));
            }
            Err(d) => {
                diags.push(d);
                el.algebras.insert(item.name.clone(), Err(SystemError::Shape("definition has errors".into())));
            }
        }
    }

    let mut values: HashMap<&str, Entry> = HashMap::new();
    let mut combos = Vec::new();
    for item in &doc.items {
        let over = match &item.kind {
            ItemKind::Algebra(_) => {
                let sys = el.algebras[&item.name].clone();
                let value = sys.is_ok().then_some(Value::Algebra);
                values.insert(&item.name, Entry { algebra: item.name.clone(), system: sys, value });
                continue;
            }
            ItemKind::Combination(c) => {
                combos.push((item, c));
                continue;
            }
            ItemKind::Word(w) => &w.over,
            ItemKind::Surface(s) => &s.over,
            ItemKind::Pattern(p) => &p.over,
        };
        let (algebra, system) = el.resolve(over);
        let value = match &system {
            Err(_) => Ok(None),
            Ok(sys) => match &item.kind {
                ItemKind::Word(w) => word(sys, w, item.pos).map(|v| Some(Value::Word(v))),
                ItemKind::Surface(s) => surface(sys, s, item.pos).map(|v| Some(Value::Surface(v))),
                ItemKind::Pattern(p) => pattern(sys, p, item.pos).map(|v| Some(Value::Pattern(v))),
                _ => unreachable!(),
            },
        };
        match value {
            Ok(value) => {
                values.insert(&item.name, Entry { algebra, system, value });
            }
            Err(d) => diags.push(d),
        }
    }
    for (item, c) in combos {
        let (algebra, system) = el.resolve(&c.over);
        let value = match &system {
            Err(_) => Ok(None),
            Ok(sys) => combination(sys, c, &values).map(|v| v.map(Value::Combination)),
        };
        match value {
            Ok(value) => {
                values.insert(&item.name, Entry { algebra, system, value });
            }
            Err(d) => diags.push(d),
        }
    }
    if !diags.is_empty() {
        diags.sort_by_key(|d| d.pos);
        return Err(diags);
    }
    let entries = doc
        .items
        .iter()
        .map(|i| (i.name.clone(), values.remove(i.name.as_str()).expect("every item elaborated")))
        .collect();
    Ok(Workspace { entries })
}

/// `None` when a referenced surface could not be built.
fn combination(
    sys: &FrobeniusSystem,
    c: &CombinationDef,
    values: &HashMap<&str, Entry>,
) -> Result<Option<SurfaceCombination>, Diagnostic> {
    let scope = Scope::of(sys);
    let mut out: Option<SurfaceCombination> = None;
    for t in &c.terms {
        let coeff = match &t.coeff {
            Some(e) => scope.eval_scalar(e)?,
            None => sys.ring_one(),
        };
        let mut surface = ColoredCobordism::empty();
        for (name, _) in &t.surfaces {
            match values.get(name.as_str()).and_then(|e| e.value.as_ref()) {
                Some(Value::Surface(s)) => surface = surface.disjoint_union(s),
                _ => return Ok(None),
            }
        }
        let (r, s) = surface.signature();
        let acc = out.get_or_insert_with(|| SurfaceCombination::zero(r, s));
        acc.add_term(surface, coeff).map_err(|e| Diagnostic::error(t.surfaces[0].1, e.to_string()))?;
    }
    Ok(out)
}

/// Parse `h=0,t=t` into a ring map out of `source`. Unassigned
/// indeterminates map to themselves. The target ring is `ground` when given,
/// otherwise the indeterminates used on the right-hand sides (source order
/// first) over the source's denominator primes.
pub fn parse_assignment(
    source: &Arc<RingDescriptor>,
    text: &str,
    ground: Option<&str>,
) -> Result<Assignment, DslError> {
    let parse_err = |d: Diagnostic| DslError::Parse(vec![d]);
    let mut pairs: Vec<(String, Expr)> = Vec::new();
    if !text.trim().is_empty() {
        for part in text.split(',') {
            let (name, rhs) = part.split_once('=').ok_or_else(|| {
                DslError::domain(format!("assignment `{}` is not of the form name=value", part.trim()))
            })?;
            let name = name.trim().to_string();
            if source.index_of(&name).is_none() {
                return Err(DslError::domain(format!("`{name}` is not an indeterminate of {source}")));
            }
            if pairs.iter().any(|(n, _)| *n == name) {
                return Err(DslError::domain(format!("`{name}` is assigned twice")));
            }
            pairs.push((name, super::parse_expr(rhs).map_err(parse_err)?));
        }
    }
    for n in source.indeterminates() {
        if !pairs.iter().any(|(m, _)| m == n) {
            pairs.push((n.clone(), Expr::Var(n.clone(), Pos::default())));
        }
    }
    let target = match ground {
        Some(g) => {
            let mut p = Parser::new(g).map_err(parse_err)?;
            let ground = p.ground().map_err(parse_err)?;
            p.finish().map_err(parse_err)?;
            ground_ring(&ground).map_err(parse_err)?
        }
        None => {
            let mut used = BTreeSet::new();
            for (_, e) in &pairs {
                vars(e, &mut used);
            }
            let mut names: Vec<String> =
                source.indeterminates().iter().filter(|n| used.contains(*n)).cloned().collect();
            names.extend(used.iter().filter(|n| source.index_of(n).is_none()).cloned());
            RingDescriptor::new(names, source.denominator_primes().iter().copied()).map_err(DslError::domain)?
        }
    };
    let unit = AlgElem::zero(&target, 0);
    let scope = Scope::linear(&target, &[], &unit);
    let values = pairs
        .iter()
        .map(|(n, e)| Ok((n.clone(), scope.eval_scalar(e).map_err(parse_err)?)))
        .collect::<Result<Vec<_>, DslError>>()?;
    Assignment::new(&target, values).map_err(DslError::domain)
}

fn vars(e: &Expr, out: &mut BTreeSet<String>) {
    match e {
        Expr::Int(..) => {}
        Expr::Var(v, _) => {
            out.insert(v.clone());
        }
        Expr::Neg(a, _) | Expr::Pow(a, _, _) | Expr::Paren(a) => vars(a, out),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
            vars(a, out);
            vars(b, out);
        }
        Expr::Tensor(es, _) => es.iter().for_each(|x| vars(x, out)),
    }
}
