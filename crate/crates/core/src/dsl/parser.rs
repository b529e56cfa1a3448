use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::tqft::Generator;

use super::ast::*;
use super::lexer::{lex, Tok, Token};
use super::{Diagnostic, Pos};

/// Deepest expression nesting accepted.
const MAX_DEPTH: usize = 64;

const BUILTIN_NAMES: [&str; 4] = ["universal", "barnatan", "gadnaot", "group"];

type PResult<T> = Result<T, Diagnostic>;

pub(crate) struct Parser {
    toks: Vec<Token>,
    at: usize,
    depth: usize,
}

impl Parser {
    pub(crate) fn new(src: &str) -> PResult<Self> {
        Ok(Self { toks: lex(src)?, at: 0, depth: 0 })
    }

    /// Comment lines at the cursor.
    fn take_comments(&mut self) -> Vec<String> {
        let mut out = Vec::new();
        while let Tok::Comment(text) = &self.toks[self.at].tok {
            out.push(text.clone());
            self.at += 1;
        }
        out
    }

    fn skip_comments(&mut self) {
        while matches!(self.toks[self.at].tok, Tok::Comment(_)) {
            self.at += 1;
        }
    }

    fn peek(&mut self) -> &Token {
        self.skip_comments();
        &self.toks[self.at]
    }

    fn peek_tok(&mut self) -> &Tok {
        &self.peek().tok
    }

    fn pos(&mut self) -> Pos {
        self.peek().pos
    }

    fn bump(&mut self) -> Token {
        self.skip_comments();
        let t = self.toks[self.at].clone();
        if t.tok != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn unexpected<T>(&mut self, wanted: &str) -> PResult<T> {
        let t = self.peek().clone();
        Err(Diagnostic::error(t.pos, format!("expected {wanted}, found {}", t.tok.describe())))
    }

    fn expect(&mut self, tok: Tok, wanted: &str) -> PResult<Pos> {
        if *self.peek_tok() == tok {
            Ok(self.bump().pos)
        } else {
            self.unexpected(wanted)
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek_tok() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    /// After a body statement: `;` optionally followed by `}`, or `}` alone.
    /// True when the body is closed.
    fn end_stmt(&mut self) -> PResult<bool> {
        if self.eat(&Tok::Semi) {
            return Ok(self.eat(&Tok::RBrace));
        }
        self.expect(Tok::RBrace, "`;` or `}`")?;
        Ok(true)
    }

    fn at_keyword(&mut self, kw: &str) -> bool {
        matches!(self.peek_tok(), Tok::Ident(s) if s == kw)
    }

    fn keyword(&mut self, kw: &str) -> PResult<Pos> {
        if self.at_keyword(kw) {
            Ok(self.bump().pos)
        } else {
            self.unexpected(&format!("`{kw}`"))
        }
    }

    fn ident(&mut self, wanted: &str) -> PResult<(String, Pos)> {
        match self.peek_tok().clone() {
            Tok::Ident(s) => Ok((s, self.bump().pos)),
            _ => self.unexpected(wanted),
        }
    }

    fn int(&mut self, wanted: &str) -> PResult<(BigInt, Pos)> {
        match self.peek_tok().clone() {
            Tok::Int(n) => Ok((n, self.bump().pos)),
            _ => self.unexpected(wanted),
        }
    }

    fn small<T: TryFrom<u64>>(&mut self, wanted: &str) -> PResult<T> {
        let (n, pos) = self.int(wanted)?;
        n.to_u64()
            .and_then(|v| T::try_from(v).ok())
            .ok_or_else(|| Diagnostic::error(pos, format!("{n} is out of range")))
    }

    fn signed(&mut self) -> PResult<i64> {
        let neg = self.eat(&Tok::Minus);
        let (n, pos) = self.int("an integer")?;
        let v = n.to_i64().ok_or_else(|| Diagnostic::error(pos, format!("{n} is out of range")))?;
        Ok(if neg { -v } else { v })
    }

    // ----- documents -----

    pub(crate) fn document(&mut self) -> PResult<Document> {
        let mut items = Vec::new();
        loop {
            let comments = self.take_comments();
            if self.toks[self.at].tok == Tok::Eof {
                return Ok(Document { items, trailing: comments });
            }
            let mut item = self.item()?;
            item.comments = comments;
            items.push(item);
        }
    }

    fn item(&mut self) -> PResult<Item> {
        let (kw, _) = self.ident("`algebra`, `word`, `surface`, `combination` or `pattern`")?;
        let (name, pos) = self.ident("a name")?;
        if BUILTIN_NAMES.contains(&name.as_str()) {
            return Err(Diagnostic::error(pos, format!("`{name}` is reserved for a built-in algebra")));
        }
        let kind = match kw.as_str() {
            "algebra" => ItemKind::Algebra(self.algebra()?),
            "word" => ItemKind::Word(self.word()?),
            "surface" => ItemKind::Surface(self.surface()?),
            "combination" => ItemKind::Combination(self.combination()?),
            "pattern" => ItemKind::Pattern(self.pattern()?),
            _ => {
                self.at -= 2;
                return self.unexpected("`algebra`, `word`, `surface`, `combination` or `pattern`");
            }
        };
        Ok(Item { comments: Vec::new(), name, pos, kind })
    }

    pub(crate) fn builtin(&mut self) -> PResult<Option<Builtin>> {
        let b = match self.peek_tok() {
            Tok::Ident(s) if s == "universal" => Builtin::Universal,
            Tok::Ident(s) if s == "barnatan" => Builtin::Barnatan,
            Tok::Ident(s) if s == "gadnaot" => Builtin::Gadnaot,
            Tok::Ident(s) if s == "group" => {
                self.bump();
                let mut orders = Vec::new();
                loop {
                    self.keyword("Z")?;
                    self.expect(Tok::Slash, "`/`")?;
                    let pos = self.pos();
                    let n: u32 = self.small("a group order")?;
                    if n < 1 {
                        return Err(Diagnostic::error(pos, "group order must be positive".to_string()));
                    }
                    orders.push(n);
                    if !self.at_keyword("x") {
                        break;
                    }
                    self.bump();
                }
                return Ok(Some(Builtin::Group(orders)));
            }
            _ => return Ok(None),
        };
        self.bump();
        Ok(Some(b))
    }

    fn algebra_ref(&mut self) -> PResult<AlgebraRef> {
        self.keyword("over")?;
        if let Some(b) = self.builtin()? {
            return Ok(AlgebraRef::Builtin(b));
        }
        Ok(AlgebraRef::Named(self.ident("an algebra name")?.0))
    }

    pub(crate) fn ground(&mut self) -> PResult<Ground> {
        let pos = self.keyword("Z")?;
        let mut primes = Vec::new();
        let mut indeterminates = Vec::new();
        if self.eat(&Tok::LBracket) {
            if matches!(self.peek_tok(), Tok::Int(_)) {
                loop {
                    let (one, p1) = self.int("`1`")?;
                    if one != BigInt::from(1) {
                        return Err(Diagnostic::error(p1, "expected `1/p`".to_string()));
                    }
                    self.expect(Tok::Slash, "`/`")?;
                    primes.push(self.small("a prime")?);
                    if !self.eat(&Tok::Comma) {
                        break;
                    }
                }
                self.expect(Tok::RBracket, "`]`")?;
                if self.eat(&Tok::LBracket) {
                    indeterminates = self.ident_list()?;
                    self.expect(Tok::RBracket, "`]`")?;
                }
            } else {
                indeterminates = self.ident_list()?;
                self.expect(Tok::RBracket, "`]`")?;
            }
        }
        Ok(Ground { primes, indeterminates, pos })
    }

    fn ident_list(&mut self) -> PResult<Vec<String>> {
        let mut out = vec![self.ident("a name")?.0];
        while self.eat(&Tok::Comma) {
            out.push(self.ident("a name")?.0);
        }
        Ok(out)
    }

    fn algebra(&mut self) -> PResult<AlgebraDef> {
        if self.eat(&Tok::Eq) {
            let pos = self.pos();
            let Some(builtin) = self.builtin()? else {
                return self.unexpected("`universal`, `barnatan`, `gadnaot` or `group`");
            };
            let ground = if self.at_keyword("over") {
                self.bump();
                Some(self.ground()?)
            } else {
                None
            };
            self.expect(Tok::Semi, "`;`")?;
            return Ok(AlgebraDef::Builtin { builtin, ground, pos });
        }
        let pos = self.expect(Tok::LBrace, "`=` or `{`")?;
        let mut ground = None;
        let mut extension = None;
        let mut basis = None;
        let mut unit = None;
        let mut products = None;
        let mut counit = None;
        let mut delta1 = None;
        let mut degrees = None;
        fn once<T>(slot: &mut Option<T>, value: T, pos: Pos, what: &str) -> PResult<()> {
            if slot.is_some() {
                return Err(Diagnostic::error(pos, format!("`{what}` given twice")));
            }
            *slot = Some(value);
            Ok(())
        }
        let mut closed = self.eat(&Tok::RBrace);
        while !closed {
            let (stmt, spos) = self.ident("an algebra statement")?;
            match stmt.as_str() {
                "ground" => {
                    let g = self.ground()?;
                    once(&mut ground, g, spos, "ground")?
                }
                "extension" => {
                    let (generator, _) = self.ident("a generator name")?;
                    self.expect(Tok::Caret, "`^`")?;
                    let dpos = self.pos();
                    let degree: u32 = self.small("a degree")?;
                    if degree == 0 {
                        return Err(Diagnostic::error(dpos, "extension degree must be positive".to_string()));
                    }
                    self.expect(Tok::Eq, "`=`")?;
                    let rhs = self.expr()?;
                    once(&mut extension, (generator, degree, rhs), spos, "extension")?
                }
                "basis" => {
                    let names = self.ident_list()?;
                    once(&mut basis, names, spos, "basis")?
                }
                "unit" => {
                    let (name, _) = self.ident("a basis name")?;
                    once(&mut unit, name, spos, "unit")?
                }
                "mult" => {
                    let mut entries = Vec::new();
                    loop {
                        let (a, _) = self.ident("a basis name")?;
                        self.expect(Tok::Star, "`*`")?;
                        let (b, _) = self.ident("a basis name")?;
                        self.expect(Tok::Eq, "`=`")?;
                        entries.push((a, b, self.expr()?));
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                    once(&mut products, entries, spos, "mult")?
                }
                "counit" => {
                    let mut entries = Vec::new();
                    loop {
                        let lhs = self.expr()?;
                        self.expect(Tok::Arrow, "`->`")?;
                        entries.push((lhs, self.expr()?));
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                    once(&mut counit, entries, spos, "counit")?
                }
                "delta1" => {
                    let mut pairs = Vec::new();
                    loop {
                        self.expect(Tok::LParen, "`(`")?;
                        let u = self.expr()?;
                        self.expect(Tok::Comma, "`,`")?;
                        let v = self.expr()?;
                        self.expect(Tok::RParen, "`)`")?;
                        pairs.push((u, v));
                        if !self.eat(&Tok::Plus) {
                            break;
                        }
                    }
                    once(&mut delta1, pairs, spos, "delta1")?
                }
                "degrees" => {
                    let mut entries = Vec::new();
                    loop {
                        let (name, _) = self.ident("a name")?;
                        self.expect(Tok::Eq, "`=`")?;
                        entries.push((name, self.signed()?));
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                    once(&mut degrees, entries, spos, "degrees")?
                }
                other => {
                    return Err(Diagnostic::error(spos, format!("unknown algebra statement `{other}`")));
                }
            }
            closed = self.end_stmt()?;
        }
        let missing = |what: &str| Diagnostic::error(pos, format!("algebra is missing `{what}`"));
        let presentation = match (extension, basis, unit, products) {
            (Some((generator, degree, rhs)), None, None, None) => Presentation::Extension { generator, degree, rhs },
            (None, Some(basis), Some(unit), products) => {
                Presentation::Table { basis, unit, products: products.unwrap_or_default() }
            }
            (None, Some(_), None, _) => return Err(missing("unit")),
            (None, None, _, _) => return Err(missing("extension` or `basis")),
            _ => {
                return Err(Diagnostic::error(pos, "use either `extension` or `basis`/`unit`/`mult`".to_string()));
            }
        };
        Ok(AlgebraDef::Custom(CustomAlgebra {
            ground: ground.ok_or_else(|| missing("ground"))?,
            presentation,
            counit: counit.ok_or_else(|| missing("counit"))?,
            delta1: delta1.ok_or_else(|| missing("delta1"))?,
            degrees,
            pos,
        }))
    }

    fn word(&mut self) -> PResult<WordDef> {
        let over = self.algebra_ref()?;
        let width = if self.at_keyword("width") {
            self.bump();
            Some(self.small("a width")?)
        } else {
            None
        };
        self.expect(Tok::LBrace, "`{`")?;
        let mut levels = Vec::new();
        if !self.eat(&Tok::RBrace) {
            loop {
                let pos = self.pos();
                let mut generators = vec![self.generator()?];
                while self.eat(&Tok::Pipe) {
                    generators.push(self.generator()?);
                }
                levels.push(Level { generators, pos });
                if self.eat(&Tok::RBrace) {
                    break;
                }
                self.expect(Tok::Semi, "`;` or `}`")?;
            }
        }
        Ok(WordDef { over, width, levels })
    }

    fn generator(&mut self) -> PResult<GenExpr> {
        let wanted = "a generator (`id`, `unit`, `counit`, `mult`, `comult`, `swap`, `color(..)`)";
        let (name, pos) = self.ident(wanted)?;
        Ok(GenExpr::Plain(match name.as_str() {
            "id" => Generator::Identity,
            "unit" => Generator::Unit,
            "counit" => Generator::Counit,
            "mult" => Generator::Mult,
            "comult" => Generator::Comult,
            "swap" => Generator::Swap,
            "color" => {
                self.expect(Tok::LParen, "`(`")?;
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                return Ok(GenExpr::Color(e));
            }
            _ => return Err(Diagnostic::error(pos, format!("unknown generator `{name}`"))),
        }))
    }

    fn slot_list(&mut self) -> PResult<Vec<usize>> {
        self.expect(Tok::LBracket, "`[`")?;
        let mut out = Vec::new();
        if !self.eat(&Tok::RBracket) {
            loop {
                out.push(self.small("a circle number")?);
                if self.eat(&Tok::RBracket) {
                    break;
                }
                self.expect(Tok::Comma, "`,` or `]`")?;
            }
        }
        Ok(out)
    }

    fn field(&mut self, name: &str) -> PResult<()> {
        self.keyword(name)?;
        self.expect(Tok::Eq, "`=`")?;
        Ok(())
    }

    fn surface(&mut self) -> PResult<SurfaceDef> {
        let over = self.algebra_ref()?;
        self.expect(Tok::LParen, "`(`")?;
        let inputs = self.small("an input count")?;
        self.expect(Tok::Comma, "`,`")?;
        let outputs = self.small("an output count")?;
        self.expect(Tok::RParen, "`)`")?;
        self.expect(Tok::LBrace, "`{`")?;
        let mut components = Vec::new();
        let mut closed = self.eat(&Tok::RBrace);
        while !closed {
            let pos = self.keyword("comp")?;
            self.field("genus")?;
            let genus = self.small("a genus")?;
            self.field("in")?;
            let ins = self.slot_list()?;
            self.field("out")?;
            let outs = self.slot_list()?;
            self.field("color")?;
            let color = self.expr()?;
            closed = self.end_stmt()?;
            components.push(ComponentDef { genus, inputs: ins, outputs: outs, color, pos });
        }
        Ok(SurfaceDef { over, inputs, outputs, components })
    }

    fn combination(&mut self) -> PResult<CombinationDef> {
        let over = self.algebra_ref()?;
        self.expect(Tok::LBrace, "`{`")?;
        let mut terms = Vec::new();
        let mut closed = self.eat(&Tok::RBrace);
        while !closed {
            let coeff = if self.eat(&Tok::LBracket) {
                let e = self.expr()?;
                self.expect(Tok::RBracket, "`]`")?;
                Some(e)
            } else {
                None
            };
            let mut surfaces = vec![self.ident("a surface name")?];
            while self.eat(&Tok::Pipe) {
                surfaces.push(self.ident("a surface name")?);
            }
            terms.push(CombinationTerm { coeff, surfaces });
            closed = self.end_stmt()?;
        }
        Ok(CombinationDef { over, terms })
    }

    fn pattern(&mut self) -> PResult<PatternDef> {
        let over = self.algebra_ref()?;
        self.expect(Tok::LBrace, "`{`")?;
        let mut statements = Vec::new();
        let mut closed = self.eat(&Tok::RBrace);
        while !closed {
            let (kw, pos) = self.ident("`black`, `white`, `edge` or `color`")?;
            statements.push(match kw.as_str() {
                "black" => PatternStmt::Black(self.ident("a vertex name")?.0, pos),
                "white" => PatternStmt::White(self.ident("a vertex name")?.0, pos),
                "edge" => {
                    let (a, _) = self.ident("a vertex name")?;
                    self.expect(Tok::Arrow, "`->`")?;
                    let (b, _) = self.ident("a vertex name")?;
                    PatternStmt::Edge(a, b, pos)
                }
                "color" => {
                    self.keyword("comp")?;
                    self.expect(Tok::LParen, "`(`")?;
                    let (v, _) = self.ident("a vertex name")?;
                    self.expect(Tok::RParen, "`)`")?;
                    self.expect(Tok::Eq, "`=`")?;
                    PatternStmt::Color(v, self.expr()?, pos)
                }
                other => return Err(Diagnostic::error(pos, format!("unknown pattern statement `{other}`"))),
            });
            closed = self.end_stmt()?;
        }
        Ok(PatternDef { over, statements })
    }

    // ----- expressions -----

    pub(crate) fn expr(&mut self) -> PResult<Expr> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            let pos = self.pos();
            return Err(Diagnostic::error(pos, "expression nested too deeply".to_string()));
        }
        let mut lhs = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(&Tok::Minus) {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                break;
            }
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(&Tok::Star) {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat(&Tok::Slash) {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                break;
            }
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Expr> {
        if *self.peek_tok() == Tok::Minus {
            let pos = self.bump().pos;
            self.depth += 1;
            if self.depth > MAX_DEPTH {
                return Err(Diagnostic::error(pos, "expression nested too deeply".to_string()));
            }
            let inner = self.unary()?;
            self.depth -= 1;
            return Ok(Expr::Neg(Box::new(inner), pos));
        }
        let base = self.primary()?;
        if *self.peek_tok() == Tok::Caret {
            let pos = self.bump().pos;
            let n: u32 = self.small("an exponent")?;
            return Ok(Expr::Pow(Box::new(base), n, pos));
        }
        Ok(base)
    }

    fn primary(&mut self) -> PResult<Expr> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Int(n, t.pos))
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Expr::Var(name, t.pos))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Expr::Paren(Box::new(e)))
            }
            Tok::Lt => {
                self.bump();
                let mut factors = vec![self.expr()?];
                while self.eat(&Tok::Comma) {
                    factors.push(self.expr()?);
                }
                self.expect(Tok::Gt, "`,` or `>`")?;
                Ok(Expr::Tensor(factors, t.pos))
            }
            _ => self.unexpected("an expression"),
        }
    }

    pub(crate) fn finish(&mut self) -> PResult<()> {
        if *self.peek_tok() == Tok::Eof {
            Ok(())
        } else {
            self.unexpected("end of input")
        }
    }
}

/// Name resolution and structural checks that need no algebra.
pub(crate) fn check(doc: &Document) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    let mut kinds: BTreeMap<&str, &Item> = BTreeMap::new();
    for item in &doc.items {
        if kinds.insert(&item.name, item).is_some() {
            diags.push(Diagnostic::error(item.pos, format!("`{}` is defined twice", item.name)));
        }
    }
    let check_ref = |over: &AlgebraRef, pos: Pos, diags: &mut Vec<Diagnostic>| {
        if let AlgebraRef::Named(name) = over {
            match kinds.get(name.as_str()) {
                Some(Item { kind: ItemKind::Algebra(_), .. }) => {}
                Some(other) => diags
                    .push(Diagnostic::error(pos, format!("`{name}` is a {}, not an algebra", other.kind.keyword()))),
                None => diags.push(Diagnostic::error(pos, format!("unknown algebra `{name}`"))),
            }
        }
    };
    for item in &doc.items {
        match &item.kind {
            ItemKind::Algebra(_) => {}
            ItemKind::Word(w) => {
                check_ref(&w.over, item.pos, &mut diags);
                check_word(w, item.pos, &mut diags);
            }
            ItemKind::Surface(s) => {
                check_ref(&s.over, item.pos, &mut diags);
                check_surface(s, item.pos, &mut diags);
            }
            ItemKind::Combination(c) => {
                check_ref(&c.over, item.pos, &mut diags);
                if c.terms.is_empty() {
                    diags.push(Diagnostic::error(item.pos, "combination has no terms".to_string()));
                }
                let mut signature = None;
                for term in &c.terms {
                    let mut sig = (0, 0);
                    for (name, pos) in &term.surfaces {
                        match kinds.get(name.as_str()) {
                            Some(Item { kind: ItemKind::Surface(s), .. }) => {
                                if s.over != c.over {
                                    diags.push(Diagnostic::error(*pos, format!("`{name}` is over another algebra")));
                                }
                                sig = (sig.0 + s.inputs, sig.1 + s.outputs);
                            }
                            Some(other) => diags.push(Diagnostic::error(
                                *pos,
                                format!("`{name}` is a {}, not a surface", other.kind.keyword()),
                            )),
                            None => diags.push(Diagnostic::error(*pos, format!("unknown surface `{name}`"))),
                        }
                    }
                    match signature {
                        None => signature = Some(sig),
                        Some(first) if first != sig => diags.push(Diagnostic::error(
                            term.surfaces[0].1,
                            format!(
                                "term has signature ({}, {}) but the first has ({}, {})",
                                sig.0, sig.1, first.0, first.1
                            ),
                        )),
                        _ => {}
                    }
                }
            }
            ItemKind::Pattern(p) => {
                check_ref(&p.over, item.pos, &mut diags);
                check_pattern(p, &mut diags);
            }
        }
    }
    diags
}

fn word_width(w: &WordDef) -> usize {
    w.width.unwrap_or_else(|| w.levels.first().map_or(0, |l| l.generators.iter().map(|g| gen_arity(g).0).sum()))
}

pub(crate) fn gen_arity(g: &GenExpr) -> (usize, usize) {
    match g {
        GenExpr::Plain(p) => p.arity(),
        GenExpr::Color(_) => (1, 1),
    }
}

pub(crate) fn declared_width(w: &WordDef) -> usize {
    word_width(w)
}

fn check_word(w: &WordDef, _pos: Pos, diags: &mut Vec<Diagnostic>) {
    let mut width = word_width(w);
    for (k, level) in w.levels.iter().enumerate() {
        let needed: usize = level.generators.iter().map(|g| gen_arity(g).0).sum();
        if needed != width {
            diags.push(Diagnostic::error(level.pos, format!("level {}: needs {needed} strands, found {width}", k + 1)));
            return;
        }
        width = level.generators.iter().map(|g| gen_arity(g).1).sum();
    }
}

fn check_surface(s: &SurfaceDef, pos: Pos, diags: &mut Vec<Diagnostic>) {
    for (side, n, lists) in [
        ("input", s.inputs, s.components.iter().map(|c| (&c.inputs, c.pos)).collect::<Vec<_>>()),
        ("output", s.outputs, s.components.iter().map(|c| (&c.outputs, c.pos)).collect::<Vec<_>>()),
    ] {
        let mut seen = BTreeSet::new();
        for (list, cpos) in lists {
            for &k in list {
                if k == 0 || k > n {
                    diags.push(Diagnostic::error(cpos, format!("{side} circle {k} is out of range 1..{n}")));
                } else if !seen.insert(k) {
                    diags.push(Diagnostic::error(cpos, format!("{side} circle {k} is used twice")));
                }
            }
        }
        if let Some(k) = (1..=n).find(|k| !seen.contains(k)) {
            diags.push(Diagnostic::error(pos, format!("{side} circle {k} belongs to no component")));
        }
    }
}

fn check_pattern(p: &PatternDef, diags: &mut Vec<Diagnostic>) {
    let mut names = BTreeSet::new();
    for stmt in &p.statements {
        if let PatternStmt::Black(n, pos) | PatternStmt::White(n, pos) = stmt {
            if !names.insert(n.as_str()) {
                diags.push(Diagnostic::error(*pos, format!("vertex `{n}` is declared twice")));
            }
        }
    }
    for stmt in &p.statements {
        let refs: Vec<(&String, Pos)> = match stmt {
            PatternStmt::Edge(a, b, pos) => vec![(a, *pos), (b, *pos)],
            PatternStmt::Color(v, _, pos) => vec![(v, *pos)],
            _ => Vec::new(),
        };
        for (name, pos) in refs {
            if !names.contains(name.as_str()) {
                diags.push(Diagnostic::error(pos, format!("unknown vertex `{name}`")));
            }
        }
    }
}
