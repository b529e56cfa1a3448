use num_bigint::BigInt;

use crate::tqft::Generator;

use super::Pos;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub items: Vec<Item>,
    /// Comment lines after the last item.
    pub trailing: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Item {
    /// `#` lines directly above the item, without the marker.
    pub comments: Vec<String>,
    pub name: String,
    pub pos: Pos,
    pub kind: ItemKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ItemKind {
    Algebra(AlgebraDef),
    Word(WordDef),
    Surface(SurfaceDef),
    Combination(CombinationDef),
    Pattern(PatternDef),
}

impl ItemKind {
    pub fn keyword(&self) -> &'static str {
        match self {
            ItemKind::Algebra(_) => "algebra",
            ItemKind::Word(_) => "word",
            ItemKind::Surface(_) => "surface",
            ItemKind::Combination(_) => "combination",
            ItemKind::Pattern(_) => "pattern",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    Universal,
    Barnatan,
    Gadnaot,
    /// Product of cyclic groups `Z/n_1 x Z/n_2 x ...`.
    Group(Vec<u32>),
}

/// Where an item's algebra comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraRef {
    Named(String),
    Builtin(Builtin),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ground {
    pub primes: Vec<u64>,
    pub indeterminates: Vec<String>,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraDef {
    /// `= universal;`, optionally `over` another ground ring.
    Builtin {
        builtin: Builtin,
        ground: Option<Ground>,
        pos: Pos,
    },
    Custom(CustomAlgebra),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Presentation {
    /// `extension X^n = rhs;`
    Extension { generator: String, degree: u32, rhs: Expr },
    /// `basis a, b; unit a; mult b*b = expr, ...;`
    Table { basis: Vec<String>, unit: String, products: Vec<(String, String, Expr)> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CustomAlgebra {
    pub ground: Ground,
    pub presentation: Presentation,
    pub counit: Vec<(Expr, Expr)>,
    pub delta1: Vec<(Expr, Expr)>,
    pub degrees: Option<Vec<(String, i64)>>,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordDef {
    pub over: AlgebraRef,
    /// Declared input width; otherwise taken from the first level.
    pub width: Option<usize>,
    pub levels: Vec<Level>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    pub generators: Vec<GenExpr>,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenExpr {
    Plain(Generator),
    Color(Expr),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceDef {
    pub over: AlgebraRef,
    pub inputs: usize,
    pub outputs: usize,
    pub components: Vec<ComponentDef>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentDef {
    pub genus: u32,
    /// 1-based circle numbers as written.
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
    pub color: Expr,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinationDef {
    pub over: AlgebraRef,
    pub terms: Vec<CombinationTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinationTerm {
    pub coeff: Option<Expr>,
    /// Surfaces placed side by side.
    pub surfaces: Vec<(String, Pos)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternDef {
    pub over: AlgebraRef,
    pub statements: Vec<PatternStmt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PatternStmt {
    Black(String, Pos),
    White(String, Pos),
    Edge(String, String, Pos),
    Color(String, Expr, Pos),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt, Pos),
    Var(String, Pos),
    Neg(Box<Expr>, Pos),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32, Pos),
    Paren(Box<Expr>),
    /// `<a, b, ...>`
    Tensor(Vec<Expr>, Pos),
}

impl Expr {
    pub fn pos(&self) -> Pos {
        match self {
            Expr::Int(_, p) | Expr::Var(_, p) | Expr::Neg(_, p) | Expr::Pow(_, _, p) | Expr::Tensor(_, p) => *p,
            Expr::Add(a, _) | Expr::Sub(a, _) | Expr::Mul(a, _) | Expr::Div(a, _) => a.pos(),
            Expr::Paren(e) => e.pos(),
        }
    }
}

impl Document {
    /// The same document with every source position reset, for comparing
    /// documents that differ only in layout.
    pub fn without_positions(&self) -> Document {
        let mut doc = self.clone();
        let z = Pos::default();
        for item in &mut doc.items {
            item.pos = z;
            match &mut item.kind {
                ItemKind::Algebra(AlgebraDef::Builtin { ground, pos, .. }) => {
                    *pos = z;
                    if let Some(g) = ground {
                        g.pos = z;
                    }
                }
                ItemKind::Algebra(AlgebraDef::Custom(c)) => {
                    c.pos = z;
                    c.ground.pos = z;
                    match &mut c.presentation {
                        Presentation::Extension { rhs, .. } => rhs.strip(),
                        Presentation::Table { products, .. } => products.iter_mut().for_each(|(_, _, e)| e.strip()),
                    }
                    for (a, b) in c.counit.iter_mut().chain(c.delta1.iter_mut()) {
                        a.strip();
                        b.strip();
                    }
                }
                ItemKind::Word(w) => {
                    for level in &mut w.levels {
                        level.pos = z;
                        for g in &mut level.generators {
                            if let GenExpr::Color(e) = g {
                                e.strip();
                            }
                        }
                    }
                }
                ItemKind::Surface(s) => {
                    for c in &mut s.components {
                        c.pos = z;
                        c.color.strip();
                    }
                }
                ItemKind::Combination(c) => {
                    for t in &mut c.terms {
                        if let Some(e) = &mut t.coeff {
                            e.strip();
                        }
                        t.surfaces.iter_mut().for_each(|(_, p)| *p = z);
                    }
                }
                ItemKind::Pattern(p) => {
                    for s in &mut p.statements {
                        match s {
                            PatternStmt::Black(_, p) | PatternStmt::White(_, p) | PatternStmt::Edge(_, _, p) => *p = z,
                            PatternStmt::Color(_, e, p) => {
                                *p = z;
                                e.strip();
                            }
                        }
                    }
                }
            }
        }
        doc
    }
}

impl Expr {
    fn strip(&mut self) {
        let z = Pos::default();
        match self {
            Expr::Int(_, p) | Expr::Var(_, p) => *p = z,
            Expr::Neg(e, p) | Expr::Pow(e, _, p) => {
                *p = z;
                e.strip();
            }
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.strip();
                b.strip();
            }
            Expr::Paren(e) => e.strip(),
            Expr::Tensor(es, p) => {
                *p = z;
                es.iter_mut().for_each(Expr::strip);
            }
        }
    }
}
