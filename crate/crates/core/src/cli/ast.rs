//! Syntax tree of workbench scripts. `Display` renders the canonical form,
//! which parses back to an identical tree.

use std::fmt;

use num_bigint::BigInt;

use crate::finring::{ElementLiteral, RingSpec};
use crate::poly::Field;
use crate::props::PropertyId;

#[derive(Debug, Clone, Default)]
pub struct Script {
    pub statements: Vec<Statement>,
    /// Source line of each statement; not part of equality.
    pub lines: Vec<usize>,
}

impl PartialEq for Script {
    fn eq(&self, other: &Self) -> bool {
        self.statements == other.statements
    }
}

impl Eq for Script {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statement {
    Ring(RingDecl),
    Ideal { name: String, gens: Vec<Item>, prime: bool },
    Module { name: String, def: ModuleDef },
    Submodule { name: String, module: String, def: SubmoduleDef },
    Query(Query),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingDecl {
    Finite(RingSpec),
    Poly { field: Field, vars: Vec<String>, base: Vec<PolyExpr> },
}

impl RingDecl {
    pub fn is_finite(&self) -> bool {
        matches!(self, RingDecl::Finite(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyExpr {
    Num(BigInt),
    Var(String),
    Neg(Box<PolyExpr>),
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Sub(Box<PolyExpr>, Box<PolyExpr>),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
    Div(Box<PolyExpr>, Box<PolyExpr>),
    Pow(Box<PolyExpr>, u32),
}

/// An ideal generator: a polynomial in a polynomial ring, an element in a finite ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Poly(PolyExpr),
    Elem(ElementLiteral),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleDef {
    Free { rank: usize, relations: Vec<Vec<ElementLiteral>> },
    Dsum(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModElem {
    Scalar(ElementLiteral),
    Vector(Vec<ElementLiteral>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubmoduleDef {
    Span(Vec<ModElem>),
    Dsum(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealExpr {
    Name(String),
    Literal(Vec<Item>),
    Sum(Box<IdealExpr>, Box<IdealExpr>),
    Product(Box<IdealExpr>, Box<IdealExpr>),
    Power(Box<IdealExpr>, u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyMode {
    Default,
    Exhaustive,
    Samples { count: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckTarget {
    Family(FamilyMode),
    Instance { sub: String, module: String },
    Powers(Vec<(String, u32)>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Query {
    Factorize { sub: String, module: String },
    Ass { module: String, sub: String },
    Filtration { sub: String, module: String, order: Vec<String> },
    IdealEq { lhs: IdealExpr, rhs: IdealExpr, expect: Option<bool> },
    PowerStabilizes { ideal: String, exponent: u32, expect: Option<bool> },
    Obstruction { ideal: String, exponent: u32, candidates: Vec<IdealExpr>, expect: Option<bool> },
    Check { id: PropertyId, target: CheckTarget, expect: Option<bool> },
}

impl Query {
    pub fn expect(&self) -> Option<bool> {
        match self {
            Query::IdealEq { expect, .. }
            | Query::PowerStabilizes { expect, .. }
            | Query::Obstruction { expect, .. }
            | Query::Check { expect, .. } => *expect,
            _ => None,
        }
    }

    pub fn is_boolean(&self) -> bool {
        !matches!(self, Query::Factorize { .. } | Query::Ass { .. } | Query::Filtration { .. })
    }

    pub fn needs_finite_ring(&self) -> bool {
        matches!(
            self,
            Query::Factorize { .. } | Query::Ass { .. } | Query::Filtration { .. } | Query::Check { .. }
        )
    }
}

fn list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T], sep: &str) -> fmt::Result {
    for (i, it) in items.iter().enumerate() {
        if i > 0 {
            write!(f, "{sep}")?;
        }
        write!(f, "{it}")?;
    }
    Ok(())
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

fn ring_spec(f: &mut fmt::Formatter<'_>, spec: &RingSpec) -> fmt::Result {
    write!(f, "{spec}")
}

impl fmt::Display for RingDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDecl::Finite(spec) => {
                write!(f, "ring ")?;
                ring_spec(f, spec)
            }
            RingDecl::Poly { field, vars, base } => {
                write!(f, "ring poly {field}[{}] / (", vars.join(","))?;
                list(f, base, ", ")?;
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Ring(r) => write!(f, "{r}"),
            Statement::Ideal { name, gens, prime } => {
                write!(f, "ideal {name} = (")?;
                list(f, gens, ", ")?;
                write!(f, ")")?;
                if *prime {
                    write!(f, " prime")?;
                }
                Ok(())
            }
            Statement::Module { name, def } => match def {
                ModuleDef::Free { rank, relations } => {
                    write!(f, "module {name} = free {rank} relations [")?;
                    for (i, row) in relations.iter().enumerate() {
                        if i > 0 {
                            write!(f, ", ")?;
                        }
                        write!(f, "[")?;
                        list(f, row, ", ")?;
                        write!(f, "]")?;
                    }
                    write!(f, "]")
                }
                ModuleDef::Dsum(parts) => write!(f, "module {name} = dsum {}", parts.join(", ")),
            },
            Statement::Submodule { name, module, def } => {
                write!(f, "submodule {name} in {module} = ")?;
                match def {
                    SubmoduleDef::Span(elems) => {
                        write!(f, "span [")?;
                        list(f, elems, ", ")?;
                        write!(f, "]")
                    }
                    SubmoduleDef::Dsum(parts) => write!(f, "dsum {}", parts.join(", ")),
                }
            }
            Statement::Query(q) => write!(f, "query {q}"),
        }
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Item::Poly(p) => write!(f, "{p}"),
            Item::Elem(e) => write!(f, "{e}"),
        }
    }
}

impl fmt::Display for ModElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModElem::Scalar(e) => write!(f, "{e}"),
            ModElem::Vector(v) => {
                write!(f, "[")?;
                list(f, v, ", ")?;
                write!(f, "]")
            }
        }
    }
}

impl PolyExpr {
    fn is_sum(&self) -> bool {
        matches!(self, PolyExpr::Add(..) | PolyExpr::Sub(..))
    }

    fn is_product(&self) -> bool {
        matches!(self, PolyExpr::Mul(..) | PolyExpr::Div(..))
    }
}

fn wrap(f: &mut fmt::Formatter<'_>, e: &PolyExpr, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for PolyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyExpr::Num(n) => write!(f, "{n}"),
            PolyExpr::Var(v) => write!(f, "{v}"),
            PolyExpr::Neg(a) => {
                write!(f, "-")?;
                wrap(f, a, a.is_sum() || a.is_product())
            }
            PolyExpr::Add(a, b) | PolyExpr::Sub(a, b) => {
                wrap(f, a, false)?;
                write!(f, "{}", if matches!(self, PolyExpr::Add(..)) { " + " } else { " - " })?;
                wrap(f, b, b.is_sum())
            }
            PolyExpr::Mul(a, b) | PolyExpr::Div(a, b) => {
                wrap(f, a, a.is_sum())?;
                write!(f, "{}", if matches!(self, PolyExpr::Mul(..)) { "*" } else { "/" })?;
                wrap(f, b, b.is_sum() || b.is_product())
            }
            PolyExpr::Pow(a, e) => {
                wrap(f, a, !matches!(**a, PolyExpr::Num(_) | PolyExpr::Var(_)))?;
                write!(f, "^{e}")
            }
        }
    }
}

impl fmt::Display for IdealExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealExpr::Name(n) => write!(f, "{n}"),
            IdealExpr::Literal(items) => {
                write!(f, "(")?;
                list(f, items, ", ")?;
                write!(f, ")")
            }
            IdealExpr::Sum(a, b) => {
                write!(f, "{a} + ")?;
                group(f, b, matches!(**b, IdealExpr::Sum(..)))
            }
            IdealExpr::Product(a, b) => {
                group(f, a, matches!(**a, IdealExpr::Sum(..)))?;
                write!(f, "*")?;
                group(f, b, matches!(**b, IdealExpr::Sum(..) | IdealExpr::Product(..)))
            }
            IdealExpr::Power(a, e) => {
                group(f, a, !matches!(**a, IdealExpr::Name(_) | IdealExpr::Literal(_)))?;
                write!(f, "^{e}")
            }
        }
    }
}

/// Square brackets group ideal expressions; parentheses delimit ideal literals.
fn group(f: &mut fmt::Formatter<'_>, e: &IdealExpr, brackets: bool) -> fmt::Result {
    if brackets {
        write!(f, "[{e}]")
    } else {
        write!(f, "{e}")
    }
}

fn expect(f: &mut fmt::Formatter<'_>, e: &Option<bool>) -> fmt::Result {
    match e {
        Some(b) => write!(f, " expect {b}"),
        None => Ok(()),
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Query::Factorize { sub, module } => write!(f, "factorize {sub} in {module}"),
            Query::Ass { module, sub } => write!(f, "ass {module} / {sub}"),
            Query::Filtration { sub, module, order } => {
                write!(f, "filtration {sub} in {module}")?;
                if !order.is_empty() {
                    write!(f, " order {}", order.join(", "))?;
                }
                Ok(())
            }
            Query::IdealEq { lhs, rhs, expect: e } => {
                write!(f, "ideal-eq {lhs} == {rhs}")?;
                expect(f, e)
            }
            Query::PowerStabilizes { ideal, exponent, expect: e } => {
                write!(f, "power-stabilizes {ideal} ^ {exponent}")?;
                expect(f, e)
            }
            Query::Obstruction { ideal, exponent, candidates, expect: e } => {
                write!(f, "obstruction {ideal} ^ {exponent} candidates ")?;
                list(f, candidates, ", ")?;
                expect(f, e)
            }
            Query::Check { id, target, expect: e } => {
                write!(f, "check {id}")?;
                match target {
                    CheckTarget::Family(FamilyMode::Default) => {}
                    CheckTarget::Family(FamilyMode::Exhaustive) => write!(f, " exhaustive")?,
                    CheckTarget::Family(FamilyMode::Samples { count, seed }) => write!(f, " samples {count} seed {seed}")?,
                    CheckTarget::Instance { sub, module } => write!(f, " on {sub} in {module}")?,
                    CheckTarget::Powers(ps) => {
                        write!(f, " on ")?;
                        for (i, (p, r)) in ps.iter().enumerate() {
                            if i > 0 {
                                write!(f, ", ")?;
                            }
                            write!(f, "{p} ^ {r}")?;
                        }
                    }
                }
                expect(f, e)
            }
        }
    }
}
