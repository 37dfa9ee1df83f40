//! Line-oriented script parser. Names are checked as they are used, so a
//! successfully parsed script refers only to declared objects of the right
//! kind, and every query matches the engine of the declared ring.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use super::ast::*;
use crate::finring::{ElementLiteral, RingSpec};
use crate::poly::Field;
use crate::props::PropertyId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("undeclared name `{0}`")]
    Undeclared(String),
    #[error("`{name}` is a {found}, expected a {expected}")]
    WrongKind { name: String, found: Kind, expected: Kind },
    #[error("`{0}` is already declared")]
    Duplicate(String),
    #[error("engine mismatch: {0}")]
    EngineMismatch(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Ideal,
    Module,
    Submodule,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Ideal => "ideal",
            Kind::Module => "module",
            Kind::Submodule => "submodule",
        })
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Cursor<'a> {
    fn err_at(&self, pos: usize, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.line,
            col: self.src[..pos.min(self.src.len())].chars().count() + 1,
            kind,
        }
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> PResult<T> {
        Err(self.err_at(self.pos, ParseErrorKind::Syntax(msg.into())))
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.src.len()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> PResult<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            self.syntax(format!("expected `{tok}`"))
        }
    }

    /// A word of letters, digits, `_` and `-` (keywords and property ids).
    fn word(&mut self) -> PResult<&'a str> {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_' || c == '-'))
            .unwrap_or(self.rest().len());
        if len == 0 {
            return self.syntax("expected a word");
        }
        let w = &self.rest()[..len];
        self.pos += len;
        Ok(w)
    }

    fn peek_word(&mut self) -> Option<&'a str> {
        let save = self.pos;
        let w = self.word().ok();
        self.pos = save;
        w
    }

    fn eat_word(&mut self, w: &str) -> bool {
        if self.peek_word() == Some(w) {
            self.word().unwrap();
            true
        } else {
            false
        }
    }

    fn keyword(&mut self, w: &str) -> PResult<()> {
        if self.eat_word(w) {
            Ok(())
        } else {
            self.syntax(format!("expected `{w}`"))
        }
    }

    fn ident(&mut self) -> PResult<(String, usize)> {
        self.skip_ws();
        let start = self.pos;
        let mut chars = self.rest().char_indices();
        match chars.next() {
            Some((_, c)) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return self.syntax("expected a name"),
        }
        let len = chars
            .find(|(_, c)| !(c.is_ascii_alphanumeric() || *c == '_'))
            .map_or(self.rest().len(), |(i, _)| i);
        self.pos += len;
        Ok((self.src[start..self.pos].to_string(), start))
    }

    fn digits(&mut self) -> PResult<&'a str> {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.rest().len());
        if len == 0 {
            return self.syntax("expected a number");
        }
        let d = &self.rest()[..len];
        self.pos += len;
        Ok(d)
    }

    fn number<T: std::str::FromStr>(&mut self) -> PResult<T> {
        let start = self.pos;
        let d = self.digits()?;
        d.parse()
            .map_err(|_| self.err_at(start, ParseErrorKind::Syntax(format!("number `{d}` out of range"))))
    }

    fn comma_list<T>(&mut self, mut item: impl FnMut(&mut Self) -> PResult<T>) -> PResult<Vec<T>> {
        let mut out = vec![item(self)?];
        while self.eat(",") {
            out.push(item(self)?);
        }
        Ok(out)
    }

    /// `open item, ... close`, possibly empty.
    fn delimited<T>(&mut self, open: &str, close: &str, item: impl FnMut(&mut Self) -> PResult<T>) -> PResult<Vec<T>> {
        self.expect(open)?;
        if self.eat(close) {
            return Ok(Vec::new());
        }
        let out = self.comma_list(item)?;
        self.expect(close)?;
        Ok(out)
    }
}

#[derive(Default)]
struct Scope {
    ring: Option<RingDecl>,
    names: HashMap<String, Kind>,
    /// Module name of each submodule.
    sub_module: HashMap<String, String>,
}

pub fn parse_script(text: &str) -> Result<Script, ParseError> {
    let mut scope = Scope::default();
    let mut script = Script::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut c = Cursor { src: line, pos: 0, line: i + 1 };
        if c.at_end() {
            continue;
        }
        let stmt = statement(&mut c, &mut scope)?;
        if !c.at_end() {
            return c.syntax("unexpected trailing input");
        }
        script.statements.push(stmt);
        script.lines.push(i + 1);
    }
    Ok(script)
}

fn statement(c: &mut Cursor, scope: &mut Scope) -> PResult<Statement> {
    let start = c.pos;
    let head = c.word()?;
    if head != "ring" && scope.ring.is_none() {
        return Err(c.err_at(start, ParseErrorKind::Syntax("the first statement must declare the ring".into())));
    }
    match head {
        "ring" => {
            if scope.ring.is_some() {
                return Err(c.err_at(start, ParseErrorKind::Syntax("the ring is already declared".into())));
            }
            let decl = ring_decl(c)?;
            scope.ring = Some(decl.clone());
            Ok(Statement::Ring(decl))
        }
        "ideal" => {
            let name = declare(c, scope, Kind::Ideal)?;
            c.expect("=")?;
            let gens = items(c, scope)?;
            let prime = c.eat_word("prime");
            Ok(Statement::Ideal { name, gens, prime })
        }
        "module" => {
            require_finite(c, scope, start, "modules")?;
            let name = declare(c, scope, Kind::Module)?;
            c.expect("=")?;
            let def = if c.eat_word("free") {
                let rank = c.number()?;
                let relations = if c.eat_word("relations") {
                    c.delimited("[", "]", |c| c.delimited("[", "]", element))?
                } else {
                    Vec::new()
                };
                ModuleDef::Free { rank, relations }
            } else if c.eat_word("dsum") {
                ModuleDef::Dsum(c.comma_list(|c| use_name(c, scope, Kind::Module))?)
            } else {
                return c.syntax("expected `free` or `dsum`");
            };
            Ok(Statement::Module { name, def })
        }
        "submodule" => {
            require_finite(c, scope, start, "submodules")?;
            let name = declare(c, scope, Kind::Submodule)?;
            c.keyword("in")?;
            let module = use_name(c, scope, Kind::Module)?;
            c.expect("=")?;
            let def = if c.eat_word("span") {
                SubmoduleDef::Span(c.delimited("[", "]", mod_elem)?)
            } else if c.eat_word("dsum") {
                SubmoduleDef::Dsum(c.comma_list(|c| use_name(c, scope, Kind::Submodule))?)
            } else {
                return c.syntax("expected `span` or `dsum`");
            };
            scope.sub_module.insert(name.clone(), module.clone());
            Ok(Statement::Submodule { name, module, def })
        }
        "query" => {
            let q = query(c, scope)?;
            if q.needs_finite_ring() && !scope.ring.as_ref().unwrap().is_finite() {
                return Err(c.err_at(
                    start,
                    ParseErrorKind::EngineMismatch(format!(
                        "`{}` needs a finite ring, but the ring is a polynomial quotient",
                        q.to_string().split_whitespace().next().unwrap_or("")
                    )),
                ));
            }
            Ok(Statement::Query(q))
        }
        other => Err(c.err_at(start, ParseErrorKind::Syntax(format!("unknown statement `{other}`")))),
    }
}

fn require_finite(c: &Cursor, scope: &Scope, at: usize, what: &str) -> PResult<()> {
    if scope.ring.as_ref().is_some_and(|r| r.is_finite()) {
        Ok(())
    } else {
        Err(c.err_at(
            at,
            ParseErrorKind::EngineMismatch(format!("{what} need a finite ring")),
        ))
    }
}

fn declare(c: &mut Cursor, scope: &mut Scope, kind: Kind) -> PResult<String> {
    let (name, at) = c.ident()?;
    if scope.names.contains_key(&name) {
        return Err(c.err_at(at, ParseErrorKind::Duplicate(name)));
    }
    scope.names.insert(name.clone(), kind);
    Ok(name)
}

fn use_name(c: &mut Cursor, scope: &Scope, kind: Kind) -> PResult<String> {
    let (name, at) = c.ident()?;
    match scope.names.get(&name) {
        None => Err(c.err_at(at, ParseErrorKind::Undeclared(name))),
        Some(&found) if found != kind => Err(c.err_at(
            at,
            ParseErrorKind::WrongKind {
                name,
                found,
                expected: kind,
            },
        )),
        Some(_) => Ok(name),
    }
}

fn ring_decl(c: &mut Cursor) -> PResult<RingDecl> {
    if c.eat_word("poly") {
        let field = if c.eat_word("QQ") {
            Field::Rationals
        } else if c.eat("GF(") {
            let at = c.pos;
            let p: u64 = c.number()?;
            c.expect(")")?;
            Field::prime(p).map_err(|e| c.err_at(at, ParseErrorKind::Syntax(e.to_string())))?
        } else {
            return c.syntax("expected a field `QQ` or `GF(p)`");
        };
        let vars = c.delimited("[", "]", |c| c.ident().map(|(n, _)| n))?;
        if vars.is_empty() {
            return c.syntax("a polynomial ring needs at least one variable");
        }
        c.expect("/")?;
        let base = c.delimited("(", ")", |c| poly_expr(c, &vars))?;
        return Ok(RingDecl::Poly { field, vars, base });
    }
    Ok(RingDecl::Finite(ring_spec(c)?))
}

fn ring_spec(c: &mut Cursor) -> PResult<RingSpec> {
    if c.eat("Z/") {
        return Ok(RingSpec::Zmod(c.number()?));
    }
    if c.eat("GF(") {
        let p = c.number()?;
        c.expect(")")?;
        return Ok(RingSpec::Gf(p));
    }
    if c.eat_word("product") {
        let parts = c.comma_list(|c| {
            if c.eat("(") {
                let inner = ring_spec(c)?;
                c.expect(")")?;
                Ok(inner)
            } else {
                ring_spec(c)
            }
        })?;
        if parts.len() < 2 {
            return c.syntax("a product needs at least two components");
        }
        return Ok(RingSpec::Product(parts));
    }
    c.syntax("expected a ring: `Z/n`, `GF(p)`, `product ...` or `poly ...`")
}

fn element(c: &mut Cursor) -> PResult<ElementLiteral> {
    if c.peek() == Some('<') {
        let parts = c.delimited("<", ">", element)?;
        if parts.is_empty() {
            return c.syntax("empty tuple");
        }
        return Ok(ElementLiteral::Tuple(parts));
    }
    let neg = c.eat("-");
    let v: i64 = c.number()?;
    Ok(ElementLiteral::Int(if neg { -v } else { v }))
}

fn mod_elem(c: &mut Cursor) -> PResult<ModElem> {
    if c.peek() == Some('[') {
        Ok(ModElem::Vector(c.delimited("[", "]", element)?))
    } else {
        Ok(ModElem::Scalar(element(c)?))
    }
}

fn items(c: &mut Cursor, scope: &Scope) -> PResult<Vec<Item>> {
    match scope.ring.as_ref().unwrap() {
        RingDecl::Finite(_) => c.delimited("(", ")", |c| element(c).map(Item::Elem)),
        RingDecl::Poly { vars, .. } => c.delimited("(", ")", |c| poly_expr(c, vars).map(Item::Poly)),
    }
}

fn poly_expr(c: &mut Cursor, vars: &[String]) -> PResult<PolyExpr> {
    let mut acc = poly_term(c, vars)?;
    loop {
        if c.eat("+") {
            acc = PolyExpr::Add(Box::new(acc), Box::new(poly_term(c, vars)?));
        } else if c.peek() == Some('-') {
            c.eat("-");
            acc = PolyExpr::Sub(Box::new(acc), Box::new(poly_term(c, vars)?));
        } else {
            return Ok(acc);
        }
    }
}

fn poly_term(c: &mut Cursor, vars: &[String]) -> PResult<PolyExpr> {
    let mut acc = poly_unary(c, vars)?;
    loop {
        if c.eat("*") {
            acc = PolyExpr::Mul(Box::new(acc), Box::new(poly_unary(c, vars)?));
        } else if c.eat("/") {
            acc = PolyExpr::Div(Box::new(acc), Box::new(poly_unary(c, vars)?));
        } else {
            return Ok(acc);
        }
    }
}

fn poly_unary(c: &mut Cursor, vars: &[String]) -> PResult<PolyExpr> {
    if c.eat("-") {
        return Ok(PolyExpr::Neg(Box::new(poly_unary(c, vars)?)));
    }
    let base = poly_atom(c, vars)?;
    if c.eat("^") {
        return Ok(PolyExpr::Pow(Box::new(base), c.number()?));
    }
    Ok(base)
}

fn poly_atom(c: &mut Cursor, vars: &[String]) -> PResult<PolyExpr> {
    match c.peek() {
        Some('(') => {
            c.eat("(");
            let e = poly_expr(c, vars)?;
            c.expect(")")?;
            Ok(e)
        }
        Some(ch) if ch.is_ascii_digit() => {
            let d = c.digits()?;
            Ok(PolyExpr::Num(d.parse::<BigInt>().expect("digits")))
        }
        Some(ch) if ch.is_ascii_alphabetic() || ch == '_' => {
            let (name, at) = c.ident()?;
            if !vars.contains(&name) {
                return Err(c.err_at(at, ParseErrorKind::Syntax(format!("`{name}` is not a ring variable"))));
            }
            Ok(PolyExpr::Var(name))
        }
        _ => c.syntax("expected a polynomial"),
    }
}

fn ideal_expr(c: &mut Cursor, scope: &Scope) -> PResult<IdealExpr> {
    let mut acc = ideal_product(c, scope)?;
    while c.eat("+") {
        acc = IdealExpr::Sum(Box::new(acc), Box::new(ideal_product(c, scope)?));
    }
    Ok(acc)
}

fn ideal_product(c: &mut Cursor, scope: &Scope) -> PResult<IdealExpr> {
    let mut acc = ideal_power(c, scope)?;
    while c.eat("*") {
        acc = IdealExpr::Product(Box::new(acc), Box::new(ideal_power(c, scope)?));
    }
    Ok(acc)
}

fn ideal_power(c: &mut Cursor, scope: &Scope) -> PResult<IdealExpr> {
    let base = match c.peek() {
        Some('(') => IdealExpr::Literal(items(c, scope)?),
        Some('[') => {
            c.eat("[");
            let e = ideal_expr(c, scope)?;
            c.expect("]")?;
            e
        }
        _ => IdealExpr::Name(use_name(c, scope, Kind::Ideal)?),
    };
    if c.eat("^") {
        return Ok(IdealExpr::Power(Box::new(base), c.number()?));
    }
    Ok(base)
}

fn expect_tag(c: &mut Cursor) -> PResult<Option<bool>> {
    if !c.eat_word("expect") {
        return Ok(None);
    }
    match c.word()? {
        "true" => Ok(Some(true)),
        "false" => Ok(Some(false)),
        _ => c.syntax("expected `true` or `false`"),
    }
}

fn sub_in_module(c: &mut Cursor, scope: &Scope) -> PResult<(String, String)> {
    let sub = use_name(c, scope, Kind::Submodule)?;
    c.keyword("in")?;
    let mat = c.pos;
    let module = use_name(c, scope, Kind::Module)?;
    check_membership(c, scope, &sub, &module, mat)?;
    Ok((sub, module))
}

fn check_membership(c: &mut Cursor, scope: &Scope, sub: &str, module: &str, at: usize) -> PResult<()> {
    if scope.sub_module.get(sub).map(String::as_str) != Some(module) {
        return Err(c.err_at(
            at,
            ParseErrorKind::Syntax(format!("`{sub}` is not declared in module `{module}`")),
        ));
    }
    Ok(())
}

fn power_ref(c: &mut Cursor, scope: &Scope) -> PResult<(String, u32)> {
    let p = use_name(c, scope, Kind::Ideal)?;
    c.expect("^")?;
    Ok((p, c.number()?))
}

fn query(c: &mut Cursor, scope: &Scope) -> PResult<Query> {
    let at = c.pos;
    let kind = c.word()?;
    match kind {
        "factorize" => {
            let (sub, module) = sub_in_module(c, scope)?;
            Ok(Query::Factorize { sub, module })
        }
        "ass" => {
            let module = use_name(c, scope, Kind::Module)?;
            c.expect("/")?;
            let sat = c.pos;
            let sub = use_name(c, scope, Kind::Submodule)?;
            check_membership(c, scope, &sub, &module, sat)?;
            Ok(Query::Ass { module, sub })
        }
        "filtration" => {
            let (sub, module) = sub_in_module(c, scope)?;
            let order = if c.eat_word("order") {
                c.comma_list(|c| use_name(c, scope, Kind::Ideal))?
            } else {
                Vec::new()
            };
            Ok(Query::Filtration { sub, module, order })
        }
        "ideal-eq" => {
            let lhs = ideal_expr(c, scope)?;
            c.expect("==")?;
            let rhs = ideal_expr(c, scope)?;
            Ok(Query::IdealEq {
                lhs,
                rhs,
                expect: expect_tag(c)?,
            })
        }
        "power-stabilizes" => {
            let (ideal, exponent) = power_ref(c, scope)?;
            Ok(Query::PowerStabilizes {
                ideal,
                exponent,
                expect: expect_tag(c)?,
            })
        }
        "obstruction" => {
            let (ideal, exponent) = power_ref(c, scope)?;
            c.keyword("candidates")?;
            let candidates = c.comma_list(|c| ideal_expr(c, scope))?;
            Ok(Query::Obstruction {
                ideal,
                exponent,
                candidates,
                expect: expect_tag(c)?,
            })
        }
        "check" => {
            let iat = c.pos;
            let name = c.word()?;
            let id: PropertyId = name
                .parse()
                .map_err(|_| c.err_at(iat, ParseErrorKind::Syntax(format!("unknown property `{name}`"))))?;
            let target = if c.eat_word("exhaustive") {
                CheckTarget::Family(FamilyMode::Exhaustive)
            } else if c.eat_word("samples") {
                let count = c.number()?;
                c.keyword("seed")?;
                CheckTarget::Family(FamilyMode::Samples { count, seed: c.number()? })
            } else if c.eat_word("on") {
                let save = c.pos;
                let _ = c.ident()?;
                let is_power = c.peek() == Some('^');
                c.pos = save;
                if is_power {
                    CheckTarget::Powers(c.comma_list(|c| power_ref(c, scope))?)
                } else {
                    let (sub, module) = sub_in_module(c, scope)?;
                    CheckTarget::Instance { sub, module }
                }
            } else {
                CheckTarget::Family(FamilyMode::Default)
            };
            Ok(Query::Check {
                id,
                target,
                expect: expect_tag(c)?,
            })
        }
        other => Err(c.err_at(at, ParseErrorKind::Syntax(format!("unknown query `{other}`")))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kind(text: &str) -> (usize, usize, ParseErrorKind) {
        let e = parse_script(text).unwrap_err();
        (e.line, e.col, e.kind)
    }

    #[test]
    fn empty_and_comments() {
        assert!(parse_script("").unwrap().statements.is_empty());
        assert!(parse_script("# nothing\n\n   \n").unwrap().statements.is_empty());
    }

    #[test]
    fn cone_script_parses() {
        let s = parse_script(
            "ring poly GF(2)[x,y,z] / (x*y - z^2, x^2 - y*z)\n\
             ideal p = (x, z) prime\n\
             query ideal-eq p*(x,y,z) == p^2 expect true\n\
             query power-stabilizes p ^ 2 expect false\n\
             query obstruction p^2 candidates (x,y,z)\n",
        )
        .unwrap();
        assert_eq!(s.statements.len(), 5);
        assert_eq!(s.lines, vec![1, 2, 3, 4, 5]);
        assert_eq!(s.statements[2].to_string(), "query ideal-eq p*(x, y, z) == p^2 expect true");
    }

    #[test]
    fn engine_mismatch() {
        let (line, _, k) = kind("ring poly QQ[x] / (x^2)\nmodule M = free 1\n");
        assert_eq!(line, 2);
        assert!(matches!(k, ParseErrorKind::EngineMismatch(_)));
        let (_, _, k) = kind("ring poly QQ[x] / ()\nquery check DSUM-MAX\n");
        assert!(matches!(k, ParseErrorKind::EngineMismatch(_)));
    }

    #[test]
    fn positions_and_names() {
        let (line, col, k) = kind("ring Z/8\nquery factorize N in M\n");
        assert_eq!((line, col), (2, 17));
        assert_eq!(k, ParseErrorKind::Undeclared("N".into()));
        let (_, col, k) = kind("ring Z/8\nideal p = (2)\nmodule M = free 1\nquery factorize p in M\n");
        assert_eq!(col, 17);
        assert!(matches!(k, ParseErrorKind::WrongKind { .. }));
        let (_, _, k) = kind("ring Z/8\nideal p = (2)\nideal p = (4)\n");
        assert_eq!(k, ParseErrorKind::Duplicate("p".into()));
        let (_, col, _) = kind("ring Z/8\nideal p = (2) primes\n");
        assert_eq!(col, 15);
        let (_, _, k) = kind("ring poly QQ[x] / (y)\n");
        assert!(matches!(k, ParseErrorKind::Syntax(_)));
        assert!(parse_script("query ass M / N").is_err());
    }

    #[test]
    fn finite_declarations() {
        let s = parse_script(
            "ring product Z/4, GF(3)\n\
             ideal p = (<2,0>, <0,1>)\n\
             module M = free 2 relations [[<2,0>, <0,0>]]\n\
             module D = dsum M, M\n\
             submodule N in M = span [[<1,1>, <0,0>]]\n\
             submodule ND in D = dsum N, N\n\
             query check DSUM-MAX on ND in D expect true\n\
             query check EXIST-IFF on p ^ 1, p ^ 2\n\
             query check UNIQUE-MULTISET samples 10 seed 7\n\
             query filtration N in M order p\n",
        )
        .unwrap();
        let again = parse_script(&s.to_string()).unwrap();
        assert_eq!(again, s);
        let (_, _, k) = kind("ring Z/4\nmodule M = free 1\nmodule K = free 1\nsubmodule N in M = span []\nquery factorize N in K\n");
        assert!(matches!(k, ParseErrorKind::Syntax(_)));
    }

    #[test]
    fn poly_rendering_round_trips() {
        let text = "ring poly QQ[x,y] / (-x^2 + 1/2*y, (x - y)^3 - -x, x*(y - 1)*x, -(x*y), x - (y - 1), x/2/3)\n";
        let s = parse_script(text).unwrap();
        let again = parse_script(&s.to_string()).unwrap();
        assert_eq!(again, s);
    }

    #[test]
    fn grouping_in_ideal_expressions() {
        let s = parse_script("ring Z/12\nideal a = (2)\nideal b = (3)\nquery ideal-eq [a + b]*a^2 == a*[b + a]\n").unwrap();
        assert_eq!(parse_script(&s.to_string()).unwrap(), s);
    }
}
