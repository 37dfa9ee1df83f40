//! Script evaluation and the `check`/`suite` commands.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde_json::{json, Value};

use super::ast::{CheckTarget, FamilyMode, IdealExpr, Item, ModElem, ModuleDef, PolyExpr, Query, RingDecl, Script, Statement, SubmoduleDef};
use super::parse::parse_script;
use crate::arith::Rational;
use crate::finmod::{
    associated_primes, factorize, rpe_filtration, sum_submodule, testing, FiniteModule, PrimeFactorization, Submodule, TieBreak,
};
use crate::finring::{build_ring, FiniteIdeal, FiniteRing, PrimeIdealFin};
use crate::poly::{OrderKind, PolyRing, Polynomial};
use crate::props::{check_instance, check_prime_powers, check_property, run_suite, InstanceFamily, PropertyId, PropertyReport};
use crate::symbolic::{obstruction_certificate, power_stabilizes, QuotIdeal, QuotientCtx};

pub const RUN_SCHEMA: &str = "gpif.run/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub format: OutputFormat,
    /// Boolean queries without an `expect` annotation must evaluate to true.
    pub expect_pass: bool,
}

/// Rendered output plus process exit code: 0 success, 1 expectation
/// mismatch or property violation, 2 parse or evaluation error.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub output: String,
    pub exit_code: i32,
}

#[derive(Debug, Clone)]
pub struct QueryResult {
    pub index: usize,
    pub query: String,
    pub value: Value,
    pub display: String,
    pub expect: Option<bool>,
    /// The expectation came from `expect_pass` rather than the script.
    pub implied: bool,
    pub ok: bool,
}

#[derive(Debug, Clone)]
pub struct RunError {
    pub query: Option<usize>,
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, Default)]
pub struct RunReport {
    pub notes: Vec<String>,
    pub results: Vec<QueryResult>,
    pub error: Option<RunError>,
}

impl RunReport {
    pub fn status(&self) -> &'static str {
        if self.error.is_some() {
            "error"
        } else if self.results.iter().all(|r| r.ok) {
            "ok"
        } else {
            "mismatch"
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status() {
            "ok" => 0,
            "mismatch" => 1,
            _ => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": RUN_SCHEMA,
            "status": self.status(),
            "notes": self.notes,
            "results": self.results.iter().map(|r| json!({
                "index": r.index,
                "query": r.query,
                "value": r.value,
                "expect": r.expect,
                "ok": r.ok,
            })).collect::<Vec<_>>(),
            "error": self.error.as_ref().map(|e| json!({
                "query": e.query,
                "line": e.line,
                "message": e.message,
            })),
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for n in &self.notes {
            writeln!(s, "note: {n}").unwrap();
        }
        for r in &self.results {
            write!(s, "query {}: {} => {}", r.index, r.query, r.display).unwrap();
            if let (Some(e), true) = (r.expect, r.implied) {
                write!(s, " (expected {e})").unwrap();
            }
            if !r.ok {
                write!(s, " MISMATCH").unwrap();
            }
            s.push('\n');
        }
        match &self.error {
            Some(e) => {
                let at = e.query.map(|q| format!("query {q}, ")).unwrap_or_default();
                writeln!(s, "error: {at}line {}: {}", e.line, e.message).unwrap();
            }
            None => writeln!(s, "status: {}", self.status()).unwrap(),
        }
        s
    }

    fn render(&self, format: OutputFormat) -> RunOutcome {
        let output = match format {
            OutputFormat::Text => self.to_text(),
            OutputFormat::Json => format!("{}\n", self.to_json()),
        };
        RunOutcome {
            output,
            exit_code: self.exit_code(),
        }
    }
}

enum RingVal {
    Finite(Arc<FiniteRing>),
    Symbolic(Arc<QuotientCtx>),
}

#[derive(Clone)]
enum IdealVal {
    Fin(FiniteIdeal, Option<PrimeIdealFin>),
    Sym(QuotIdeal),
}

impl IdealVal {
    fn show(&self) -> String {
        match self {
            IdealVal::Fin(i, _) => i.to_string(),
            IdealVal::Sym(q) => q.to_string(),
        }
    }
}

#[derive(Default)]
struct Env {
    ring: Option<RingVal>,
    ideals: HashMap<String, IdealVal>,
    modules: HashMap<String, Arc<FiniteModule>>,
    subs: HashMap<String, Submodule>,
    notes: Vec<String>,
}

type EvalResult<T> = Result<T, String>;

/// Evaluates a script polynomial in `ring`.
pub fn poly_of(ring: &Arc<PolyRing>, e: &PolyExpr) -> EvalResult<Polynomial> {
    let err = |e: crate::poly::PolyError| e.to_string();
    Ok(match e {
        PolyExpr::Num(n) => {
            let c = ring.field().from_rational(&Rational::from_integer(n.clone())).map_err(err)?;
            Polynomial::constant(ring, c)
        }
        PolyExpr::Var(v) => {
            let i = ring.var_index(v).ok_or_else(|| format!("unknown variable {v}"))?;
            Polynomial::var(ring, i)
        }
        PolyExpr::Neg(a) => poly_of(ring, a)?.neg(),
        PolyExpr::Add(a, b) => poly_of(ring, a)?.checked_add(&poly_of(ring, b)?).map_err(err)?,
        PolyExpr::Sub(a, b) => poly_of(ring, a)?.checked_sub(&poly_of(ring, b)?).map_err(err)?,
        PolyExpr::Mul(a, b) => poly_of(ring, a)?.checked_mul(&poly_of(ring, b)?).map_err(err)?,
        PolyExpr::Div(a, b) => {
            let (a, b) = (poly_of(ring, a)?, poly_of(ring, b)?);
            if b.is_zero() {
                return Err("division by zero".into());
            }
            a.exact_div(&b).map_err(err)?
        }
        PolyExpr::Pow(a, k) => poly_of(ring, a)?.pow(*k),
    })
}

impl Env {
    fn finite(&self) -> EvalResult<&Arc<FiniteRing>> {
        match &self.ring {
            Some(RingVal::Finite(r)) => Ok(r),
            _ => Err("this needs a finite ring".into()),
        }
    }

    fn ideal_from_items(&self, items: &[Item]) -> EvalResult<IdealVal> {
        match self.ring.as_ref().ok_or("no ring declared")? {
            RingVal::Finite(r) => {
                let elems = items
                    .iter()
                    .map(|it| match it {
                        Item::Elem(l) => r.element(l).map_err(|e| e.to_string()),
                        Item::Poly(p) => Err(format!("polynomial {p} in a finite ring")),
                    })
                    .collect::<EvalResult<Vec<usize>>>()?;
                Ok(IdealVal::Fin(r.ideal_closure(&elems), None))
            }
            RingVal::Symbolic(ctx) => {
                let polys = items
                    .iter()
                    .map(|it| match it {
                        Item::Poly(p) => poly_of(ctx.ring(), p),
                        Item::Elem(l) => Err(format!("element {l} in a polynomial ring")),
                    })
                    .collect::<EvalResult<Vec<_>>>()?;
                Ok(IdealVal::Sym(QuotIdeal::new(ctx, polys)))
            }
        }
    }

    fn ideal(&self, name: &str) -> EvalResult<&IdealVal> {
        self.ideals.get(name).ok_or_else(|| format!("undeclared ideal {name}"))
    }

    fn eval_ideal(&self, e: &IdealExpr) -> EvalResult<IdealVal> {
        let sym = |r: Result<QuotIdeal, crate::symbolic::QuotientError>| r.map(IdealVal::Sym).map_err(|e| e.to_string());
        Ok(match e {
            IdealExpr::Name(n) => self.ideal(n)?.clone(),
            IdealExpr::Literal(items) => self.ideal_from_items(items)?,
            IdealExpr::Sum(a, b) | IdealExpr::Product(a, b) => {
                let is_sum = matches!(e, IdealExpr::Sum(..));
                match (self.eval_ideal(a)?, self.eval_ideal(b)?) {
                    (IdealVal::Fin(x, _), IdealVal::Fin(y, _)) => {
                        IdealVal::Fin(if is_sum { x.sum(&y) } else { x.product(&y) }, None)
                    }
                    (IdealVal::Sym(x), IdealVal::Sym(y)) => sym(if is_sum { x.sum(&y) } else { x.product(&y) })?,
                    _ => return Err("mixed ideal kinds".into()),
                }
            }
            IdealExpr::Power(a, r) => match self.eval_ideal(a)? {
                IdealVal::Fin(x, _) => IdealVal::Fin(x.power(*r), None),
                IdealVal::Sym(x) => IdealVal::Sym(x.power(*r)),
            },
        })
    }

    fn prime(&self, name: &str) -> EvalResult<PrimeIdealFin> {
        match self.ideal(name)? {
            IdealVal::Fin(_, Some(p)) => Ok(p.clone()),
            IdealVal::Fin(i, None) => self.finite()?.as_prime(i).map_err(|e| format!("{name}: {e}")),
            IdealVal::Sym(_) => Err(format!("{name} is not an ideal of a finite ring")),
        }
    }

    fn module(&self, name: &str) -> EvalResult<&Arc<FiniteModule>> {
        self.modules.get(name).ok_or_else(|| format!("undeclared module {name}"))
    }

    fn sub(&self, name: &str, module: &str) -> EvalResult<(&Arc<FiniteModule>, &Submodule)> {
        let m = self.module(module)?;
        let s = self.subs.get(name).ok_or_else(|| format!("undeclared submodule {name}"))?;
        if !Arc::ptr_eq(s.module(), m) {
            return Err(format!("{name} is not a submodule of {module}"));
        }
        Ok((m, s))
    }

    fn declare(&mut self, st: &Statement) -> EvalResult<()> {
        match st {
            Statement::Ring(RingDecl::Finite(spec)) => {
                self.ring = Some(RingVal::Finite(build_ring(spec).map_err(|e| e.to_string())?));
            }
            Statement::Ring(RingDecl::Poly { field, vars, base }) => {
                let ring = PolyRing::new(vars.clone(), field.clone(), OrderKind::Grevlex).map_err(|e| e.to_string())?;
                let gens = base.iter().map(|p| poly_of(&ring, p)).collect::<EvalResult<Vec<_>>>()?;
                let ctx = QuotientCtx::new(&ring, gens).map_err(|e| e.to_string())?;
                self.ring = Some(RingVal::Symbolic(ctx));
            }
            Statement::Ideal { name, gens, prime } => {
                let mut val = self.ideal_from_items(gens)?;
                if *prime {
                    match &mut val {
                        IdealVal::Fin(i, slot) => {
                            let p = self.finite()?.as_prime(i).map_err(|e| format!("ideal {name}: {e}"))?;
                            *slot = Some(p);
                        }
                        IdealVal::Sym(_) => self.notes.push(format!("ideal {name} asserted prime, not verified")),
                    }
                }
                self.ideals.insert(name.clone(), val);
            }
            Statement::Module { name, def } => {
                let ring = self.finite()?.clone();
                let m = match def {
                    ModuleDef::Free { rank, relations } => {
                        let rows = relations
                            .iter()
                            .map(|row| row.iter().map(|l| ring.element(l).map_err(|e| e.to_string())).collect())
                            .collect::<EvalResult<Vec<Vec<usize>>>>()?;
                        FiniteModule::presented(&ring, *rank, &rows)
                    }
                    ModuleDef::Dsum(parts) => {
                        let ms = parts.iter().map(|p| self.module(p).cloned()).collect::<EvalResult<Vec<_>>>()?;
                        FiniteModule::sum_of(&ms)
                    }
                }
                .map_err(|e| format!("module {name}: {e}"))?;
                self.modules.insert(name.clone(), m);
            }
            Statement::Submodule { name, module, def } => {
                let ring = self.finite()?.clone();
                let m = self.module(module)?.clone();
                let s = match def {
                    SubmoduleDef::Span(elems) => {
                        let mut gens = Vec::new();
                        for el in elems {
                            let coords = match el {
                                ModElem::Scalar(l) => vec![ring.element(l).map_err(|e| e.to_string())?],
                                ModElem::Vector(ls) => ls
                                    .iter()
                                    .map(|l| ring.element(l).map_err(|e| e.to_string()))
                                    .collect::<EvalResult<Vec<_>>>()?,
                            };
                            gens.push(m.from_coords(&coords).map_err(|e| format!("submodule {name}: {e}"))?);
                        }
                        m.submodule_closure(&gens)
                    }
                    SubmoduleDef::Dsum(parts) => {
                        let subs = parts
                            .iter()
                            .map(|p| self.subs.get(p).cloned().ok_or_else(|| format!("undeclared submodule {p}")))
                            .collect::<EvalResult<Vec<_>>>()?;
                        sum_submodule(&m, &subs).map_err(|e| format!("submodule {name}: {e}"))?
                    }
                };
                self.subs.insert(name.clone(), s);
            }
            Statement::Query(_) => unreachable!("queries are evaluated separately"),
        }
        Ok(())
    }

    fn query(&self, q: &Query) -> EvalResult<(Value, String)> {
        match q {
            Query::Factorize { sub, module } => {
                let (m, s) = self.sub(sub, module)?;
                let f = if s.is_full() {
                    PrimeFactorization::from_primes([])
                } else {
                    factorize(m, s).map_err(|e| e.to_string())?
                };
                let factors: Vec<Value> = f
                    .factors()
                    .iter()
                    .map(|(p, r)| json!({"prime": p.to_string(), "exponent": r}))
                    .collect();
                Ok((json!({"factors": factors, "text": f.to_string()}), f.to_string()))
            }
            Query::Ass { module, sub } => {
                let (m, s) = self.sub(sub, module)?;
                let ass = associated_primes(m, s).map_err(|e| e.to_string())?;
                let names: Vec<String> = ass.iter().map(|p| p.to_string()).collect();
                Ok((json!(names), format!("{{{}}}", names.join(", "))))
            }
            Query::Filtration { sub, module, order } => {
                let (m, s) = self.sub(sub, module)?;
                let tie = if order.is_empty() {
                    TieBreak::Canonical
                } else {
                    TieBreak::Preferred(order.iter().map(|p| self.prime(p)).collect::<EvalResult<_>>()?)
                };
                let f = rpe_filtration(m, s, &tie).map_err(|e| e.to_string())?;
                let steps: Vec<Value> = f
                    .steps()
                    .iter()
                    .map(|(p, st)| json!({"prime": p.to_string(), "stage": st.to_string()}))
                    .collect();
                Ok((json!({"steps": steps, "text": f.to_string()}), f.to_string()))
            }
            Query::IdealEq { lhs, rhs, .. } => {
                let eq = match (self.eval_ideal(lhs)?, self.eval_ideal(rhs)?) {
                    (IdealVal::Fin(a, _), IdealVal::Fin(b, _)) => a == b,
                    (IdealVal::Sym(a), IdealVal::Sym(b)) => a.quot_eq(&b).map_err(|e| e.to_string())?,
                    _ => return Err("mixed ideal kinds".into()),
                };
                Ok((json!(eq), eq.to_string()))
            }
            Query::PowerStabilizes { ideal, exponent, .. } => {
                if *exponent == 0 {
                    return Err("power-stabilizes needs an exponent of at least 1".into());
                }
                let st = match self.ideal(ideal)? {
                    IdealVal::Fin(i, _) => i.power(*exponent) == i.power(exponent - 1),
                    IdealVal::Sym(q) => power_stabilizes(q, *exponent),
                };
                Ok((json!(st), st.to_string()))
            }
            Query::Obstruction { ideal, exponent, candidates, .. } => {
                let r = *exponent;
                if r < 2 {
                    return Err(format!("obstruction certificates need r >= 2, got {r}"));
                }
                let cands = candidates.iter().map(|c| self.eval_ideal(c)).collect::<EvalResult<Vec<_>>>()?;
                let found = match self.ideal(ideal)? {
                    IdealVal::Fin(p, _) => {
                        let (prev, pr) = (p.power(r - 1), p.power(r));
                        let mut hit = None;
                        for c in &cands {
                            let IdealVal::Fin(a, _) = c else { return Err("mixed ideal kinds".into()) };
                            if p.is_subset(a) && a != p && prev.product(a).is_subset(&pr) {
                                hit = Some(c.show());
                                break;
                            }
                        }
                        hit
                    }
                    IdealVal::Sym(p) => {
                        let qs = cands
                            .into_iter()
                            .map(|c| match c {
                                IdealVal::Sym(q) => Ok(q),
                                IdealVal::Fin(..) => Err("mixed ideal kinds".to_string()),
                            })
                            .collect::<EvalResult<Vec<_>>>()?;
                        obstruction_certificate(p, r, &qs).map_err(|e| e.to_string())?.map(|q| q.to_string())
                    }
                };
                let display = match &found {
                    Some(c) => format!("true (certificate {c})"),
                    None => "false".to_string(),
                };
                Ok((json!({"obstructed": found.is_some(), "certificate": found}), display))
            }
            Query::Check { id, target, .. } => self.check(*id, target),
        }
    }

    fn check(&self, id: PropertyId, target: &CheckTarget) -> EvalResult<(Value, String)> {
        let ring = self.finite()?;
        let verdict = |v: Result<(), String>| -> (Value, String) {
            match v {
                Ok(()) => (json!({"pass": true}), "true".into()),
                Err(m) => (json!({"pass": false, "violation": m}), format!("false ({m})")),
            }
        };
        match target {
            CheckTarget::Family(mode) => {
                let spec = ring.spec().ok_or("the ring has no specification")?.clone();
                let mut fam = InstanceFamily::with_rings(vec![spec]);
                if let FamilyMode::Samples { count, seed } = mode {
                    fam = fam.sampled(*count, *seed);
                }
                fam.mutate_colon = testing::colon_mutation();
                let report = check_property(id, &fam).map_err(|e| e.to_string())?;
                let mut display = format!("{} ({} instances)", report.passed, report.instances);
                if let Some(c) = &report.counterexample {
                    write!(display, ": {}", c.message).unwrap();
                }
                Ok((report.to_json(), display))
            }
            CheckTarget::Instance { sub, module } => {
                let (m, s) = self.sub(sub, module)?;
                Ok(verdict(check_instance(id, m, s).map_err(|e| e.to_string())?))
            }
            CheckTarget::Powers(list) => {
                let powers = list
                    .iter()
                    .map(|(n, r)| Ok((self.prime(n)?, *r)))
                    .collect::<EvalResult<Vec<_>>>()?;
                Ok(verdict(check_prime_powers(id, ring, &powers).map_err(|e| e.to_string())?))
            }
        }
    }
}

fn as_bool(q: &Query, v: &Value) -> Option<bool> {
    match q {
        Query::IdealEq { .. } | Query::PowerStabilizes { .. } => v.as_bool(),
        Query::Obstruction { .. } => v["obstructed"].as_bool(),
        Query::Check { .. } => v["pass"].as_bool(),
        _ => None,
    }
}

/// Evaluates a parsed script, stopping at the first evaluation error.
pub fn evaluate(script: &Script, opts: &RunOptions) -> RunReport {
    let mut env = Env::default();
    let mut report = RunReport::default();
    let mut index = 0;
    for (k, st) in script.statements.iter().enumerate() {
        let line = script.lines.get(k).copied().unwrap_or(0);
        let outcome = match st {
            Statement::Query(q) => {
                index += 1;
                env.query(q).map(|(value, display)| {
                    let expect = q.expect().or((opts.expect_pass && q.is_boolean()).then_some(true));
                    let ok = match (expect, as_bool(q, &value)) {
                        (Some(e), Some(b)) => e == b,
                        _ => true,
                    };
                    report.results.push(QueryResult {
                        index,
                        query: q.to_string(),
                        value,
                        display,
                        expect,
                        implied: q.expect().is_none() && expect.is_some(),
                        ok,
                    });
                })
            }
            _ => env.declare(st),
        };
        if let Err(message) = outcome {
            report.error = Some(RunError {
                query: matches!(st, Statement::Query(_)).then_some(index),
                line,
                message,
            });
            break;
        }
    }
    report.notes = env.notes;
    report
}

/// Parses and evaluates script text.
pub fn run_script(text: &str, opts: &RunOptions) -> RunOutcome {
    match parse_script(text) {
        Ok(script) => evaluate(&script, opts).render(opts.format),
        Err(e) => RunReport {
            error: Some(RunError {
                query: None,
                line: e.line,
                message: format!("parse error at column {}: {}", e.col, e.kind),
            }),
            ..Default::default()
        }
        .render(opts.format),
    }
}

fn render_reports(reports: &[PropertyReport], format: OutputFormat) -> RunOutcome {
    let mut output = String::new();
    for r in reports {
        match format {
            OutputFormat::Text => writeln!(output, "{}", r.to_text().trim_end()).unwrap(),
            OutputFormat::Json => writeln!(output, "{}", r.to_json()).unwrap(),
        }
    }
    RunOutcome {
        output,
        exit_code: if reports.iter().all(|r| r.passed) { 0 } else { 1 },
    }
}

fn error_outcome(message: String) -> RunOutcome {
    RunOutcome {
        output: format!("error: {message}\n"),
        exit_code: 2,
    }
}

/// `gpif check ID`: one property over the default family.
pub fn check_command(id: &str, mode: &FamilyMode, format: OutputFormat) -> RunOutcome {
    let id: PropertyId = match id.parse() {
        Ok(id) => id,
        Err(e) => return error_outcome(format!("{e}")),
    };
    let mut fam = InstanceFamily::default_family();
    if let FamilyMode::Samples { count, seed } = mode {
        fam = fam.sampled(*count, *seed);
    }
    match check_property(id, &fam) {
        Ok(r) => render_reports(&[r], format),
        Err(e) => error_outcome(e.to_string()),
    }
}

/// `gpif suite`: every property over the default exhaustive family.
pub fn suite_command(format: OutputFormat) -> RunOutcome {
    match run_suite(&InstanceFamily::default_family()) {
        Ok(rs) => render_reports(&rs, format),
        Err(e) => error_outcome(e.to_string()),
    }
}
