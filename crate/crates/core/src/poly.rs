//! Sparse multivariate polynomials with dense exponent vectors over ℚ or GF(p).

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::arith::{is_prime, ArithError, ModularInt, Rational};

pub const MAX_VARS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("GF({0}) needs a prime modulus")]
    NotPrime(u64),
    #[error("at most {MAX_VARS} variables are supported, got {0}")]
    TooManyVariables(usize),
    #[error("duplicate or empty variable name {0:?}")]
    BadVariable(String),
    #[error("division is not exact")]
    InexactDivision,
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Coefficient field of a polynomial ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field, PolyError> {
        if !is_prime(p) {
            return Err(PolyError::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(&self) -> Coeff {
        self.from_int(0)
    }

    pub fn one(&self) -> Coeff {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Coeff {
        match self {
            Field::Rationals => Coeff::Q(Rational::from_integer(n)),
            Field::Prime(p) => Coeff::Fp(ModularInt::new(n, *p).expect("prime modulus")),
        }
    }

    /// Maps a rational literal into the field; fails if the denominator vanishes mod p.
    pub fn from_rational(&self, r: &Rational) -> Result<Coeff, PolyError> {
        match self {
            Field::Rationals => Ok(Coeff::Q(r.clone())),
            Field::Prime(p) => {
                let n = ModularInt::from_big(r.numer(), *p)?;
                let d = ModularInt::from_big(r.denom(), *p)?;
                Ok(Coeff::Fp(n * d.inverse()?))
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// A field element. Both operands of an operation always come from the same
/// [`Field`]; ring construction enforces this.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coeff {
    Q(Rational),
    Fp(ModularInt),
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Q(q) => q.is_zero(),
            Coeff::Fp(m) => m.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Q(q) => q.is_one(),
            Coeff::Fp(m) => m.is_one(),
        }
    }

    pub fn add(&self, rhs: &Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Q(a), Coeff::Q(b)) => Coeff::Q(a + b),
            (Coeff::Fp(a), Coeff::Fp(b)) => Coeff::Fp(*a + *b),
            _ => panic!("mixed coefficient fields"),
        }
    }

    pub fn sub(&self, rhs: &Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Q(a), Coeff::Q(b)) => Coeff::Q(a - b),
            (Coeff::Fp(a), Coeff::Fp(b)) => Coeff::Fp(*a - *b),
            _ => panic!("mixed coefficient fields"),
        }
    }

    pub fn mul(&self, rhs: &Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Q(a), Coeff::Q(b)) => Coeff::Q(a * b),
            (Coeff::Fp(a), Coeff::Fp(b)) => Coeff::Fp(*a * *b),
            _ => panic!("mixed coefficient fields"),
        }
    }

    pub fn neg(&self) -> Coeff {
        match self {
            Coeff::Q(a) => Coeff::Q(-a),
            Coeff::Fp(a) => Coeff::Fp(a.neg()),
        }
    }

    pub fn inverse(&self) -> Result<Coeff, ArithError> {
        Ok(match self {
            Coeff::Q(a) => Coeff::Q(a.inverse()?),
            Coeff::Fp(a) => Coeff::Fp(a.inverse()?),
        })
    }

    fn is_negative(&self) -> bool {
        matches!(self, Coeff::Q(q) if q.is_negative())
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Q(q) => write!(f, "{q}"),
            Coeff::Fp(m) => write!(f, "{}", m.value()),
        }
    }
}

/// An exponent vector, one entry per ring variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, rhs: &Monomial) -> bool {
        self.0.iter().zip(&rhs.0).all(|(a, b)| a <= b)
    }

    /// `rhs / self`, assuming `self` divides `rhs`.
    pub fn quotient_of(&self, rhs: &Monomial) -> Monomial {
        Monomial(rhs.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, rhs: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&rhs.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, rhs: &Monomial) -> bool {
        self.0.iter().zip(&rhs.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Grevlex,
    Lex,
    /// Block order: the first `k` variables form a block that dominates,
    /// with grevlex inside each block.
    Elimination(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub nvars: usize,
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, nvars: usize) -> Self {
        MonomialOrder { kind, nvars }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Lex => a.0.cmp(&b.0),
            OrderKind::Grevlex => grevlex(&a.0, &b.0),
            OrderKind::Elimination(k) => {
                grevlex(&a.0[..k], &b.0[..k]).then_with(|| grevlex(&a.0[k..], &b.0[k..]))
            }
        }
    }
}

/// Ambient polynomial ring: variable names, coefficient field and term order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    vars: Vec<String>,
    field: Field,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new(vars: Vec<String>, field: Field, kind: OrderKind) -> Result<Arc<PolyRing>, PolyError> {
        if vars.len() > MAX_VARS {
            return Err(PolyError::TooManyVariables(vars.len()));
        }
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() || vars[..i].contains(v) {
                return Err(PolyError::BadVariable(v.clone()));
            }
        }
        if let Field::Prime(p) = field {
            if !is_prime(p) {
                return Err(PolyError::NotPrime(p));
            }
        }
        let order = MonomialOrder::new(kind, vars.len());
        Ok(Arc::new(PolyRing { vars, field, order }))
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same variables and field under another term order.
    pub fn with_order(&self, kind: OrderKind) -> Arc<PolyRing> {
        Arc::new(PolyRing {
            vars: self.vars.clone(),
            field: self.field.clone(),
            order: MonomialOrder::new(kind, self.vars.len()),
        })
    }
}

#[derive(Debug, Clone)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    /// Nonzero terms, strictly descending under the ring order.
    terms: Vec<(Monomial, Coeff)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

pub(crate) fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(f: &Polynomial, g: &Polynomial, op: PolyOp) -> Result<Polynomial, PolyError> {
    match op {
        PolyOp::Add => f.checked_add(g),
        PolyOp::Sub => f.checked_sub(g),
        PolyOp::Mul => f.checked_mul(g),
    }
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Coeff) -> Self {
        Self::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, ring.field.one())
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        Self::term(ring, Monomial::var(ring.nvars(), i), ring.field.one())
    }

    pub fn term(ring: &Arc<PolyRing>, m: Monomial, c: Coeff) -> Self {
        assert_eq!(m.0.len(), ring.nvars(), "monomial length must match the ring");
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(ring: &Arc<PolyRing>, terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> Self {
        let mut acc = Polynomial::zero(ring);
        for (m, c) in terms {
            acc = acc.add_unchecked(&Polynomial::term(ring, m, c));
        }
        acc
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn leading_term(&self) -> Result<(&Monomial, &Coeff), PolyError> {
        self.terms.first().map(|(m, c)| (m, c)).ok_or(PolyError::ZeroPolynomial)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    /// Leading term under an order other than the ring's own.
    pub fn leading_term_in(&self, ord: &MonomialOrder) -> Result<(&Monomial, &Coeff), PolyError> {
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp(&a.0, &b.0))
            .map(|(m, c)| (m, c))
            .ok_or(PolyError::ZeroPolynomial)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }

    fn check(&self, other: &Polynomial) -> Result<(), PolyError> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check(other)?;
        Ok(self.add_unchecked(&other.neg()))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &Polynomial) -> Polynomial {
        let ord = self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ord.cmp(ma, mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), cb.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ca.add(cb);
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub(crate) fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            acc = acc.add_unchecked(&other.mul_term(m, c));
        }
        acc
    }

    /// `c * m * self`; order is preserved because term orders are multiplicative.
    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(tm, tc)| (tm.mul(m), tc.mul(c)))
                .collect(),
        }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        self.mul_term(&Monomial::one(self.ring.nvars()), c)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inverse().expect("nonzero leading coefficient")),
        }
    }

    /// Re-expresses the polynomial in `ring`, mapping each exponent vector through `f`.
    pub fn map_into(&self, ring: &Arc<PolyRing>, f: impl Fn(&Monomial) -> Monomial) -> Polynomial {
        Polynomial::from_terms(ring, self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    /// Exact quotient `self / divisor`.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check(divisor)?;
        let (lm, lc) = divisor.leading_term()?;
        let lc_inv = lc.inverse()?;
        let mut rest = self.clone();
        let mut quotient = Polynomial::zero(&self.ring);
        while let Some((m, c)) = rest.terms.first().cloned() {
            if !lm.divides(&m) {
                return Err(PolyError::InexactDivision);
            }
            let qm = lm.quotient_of(&m);
            let qc = c.mul(&lc_inv);
            rest = rest.add_unchecked(&divisor.mul_term(&qm, &qc.neg()));
            quotient = quotient.add_unchecked(&Polynomial::term(&self.ring, qm, qc));
        }
        Ok(quotient)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, vars: &[String], m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (v, &e) in vars.iter().zip(&m.0) {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "{v}")?;
        } else {
            write!(f, "{v}^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = if c.is_negative() { (true, c.neg()) } else { (false, c.clone()) };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, &self.ring.vars, m)?;
            }
        }
        Ok(())
    }
}


#[cfg(test)]
mod tests {
    use super::test_support::*;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn arithmetic_examples() {
        let r = xyz(Field::Rationals, OrderKind::Grevlex);
        let f = p(&r, &[(1, [1, 1, 0]), (-1, [0, 0, 2])]);
        let g = p(&r, &[(1, [0, 0, 2])]);
        assert_eq!(f.checked_add(&g).unwrap(), p(&r, &[(1, [1, 1, 0])]));
        assert!(f.checked_mul(&Polynomial::zero(&r)).unwrap().is_zero());
        let xpy = p(&r, &[(1, [1, 0, 0]), (1, [0, 1, 0])]);
        let xmy = p(&r, &[(1, [1, 0, 0]), (-1, [0, 1, 0])]);
        assert_eq!(
            poly_arith(&xpy, &xmy, PolyOp::Mul).unwrap(),
            p(&r, &[(1, [2, 0, 0]), (-1, [0, 2, 0])])
        );
        assert_eq!(f.to_string(), "x*y - z^2");
    }

    #[test]
    fn mismatched_rings() {
        let a = xyz(Field::Rationals, OrderKind::Grevlex);
        let b = xyz(Field::Prime(2), OrderKind::Grevlex);
        let f = Polynomial::var(&a, 0);
        let g = Polynomial::var(&b, 0);
        assert_eq!(f.checked_add(&g), Err(PolyError::RingMismatch));
        assert!(PolyRing::new(vec!["x".into(), "x".into()], Field::Rationals, OrderKind::Lex).is_err());
        assert_eq!(Field::prime(4), Err(PolyError::NotPrime(4)));
    }

    #[test]
    fn leading_terms() {
        // grevlex oracle: equal degree, compare last variable; smaller z-exponent wins.
        let (a, b) = (Monomial::new(vec![2, 0, 0]), Monomial::new(vec![0, 1, 1]));
        assert_eq!(grevlex(a.exps(), b.exps()), Ordering::Greater);
        let r = xyz(Field::Rationals, OrderKind::Grevlex);
        let f = p(&r, &[(1, [2, 0, 0]), (-1, [0, 1, 1])]);
        assert_eq!(f.leading_term().unwrap().0, &a);
        let x = Polynomial::var(&r, 0);
        for kind in [OrderKind::Lex, OrderKind::Grevlex, OrderKind::Elimination(1)] {
            let ord = MonomialOrder::new(kind, 3);
            assert_eq!(x.leading_term_in(&ord).unwrap().0, &Monomial::var(3, 0));
        }
        assert_eq!(Polynomial::zero(&r).leading_term(), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn elimination_block_dominates() {
        let ord = MonomialOrder::new(OrderKind::Elimination(1), 3);
        let t = Monomial::new(vec![1, 0, 0]);
        let big = Monomial::new(vec![0, 9, 9]);
        assert_eq!(ord.cmp(&t, &big), Ordering::Greater);
    }

    #[test]
    fn gf_rendering_and_literals() {
        let r = xyz(Field::Prime(5), OrderKind::Grevlex);
        let half = r.field().from_rational(&Rational::new(1, 2).unwrap()).unwrap();
        assert_eq!(half, r.field().from_int(3));
        assert!(Field::Prime(5).from_rational(&Rational::new(1, 5).unwrap()).is_err());
        let f = p(&r, &[(-1, [1, 0, 0])]);
        assert_eq!(f.to_string(), "4*x");
    }

    #[test]
    fn exact_division() {
        let r = xyz(Field::Rationals, OrderKind::Grevlex);
        let f = p(&r, &[(1, [2, 0, 0]), (-1, [0, 2, 0])]);
        let g = p(&r, &[(1, [1, 0, 0]), (1, [0, 1, 0])]);
        assert_eq!(f.exact_div(&g).unwrap(), p(&r, &[(1, [1, 0, 0]), (-1, [0, 1, 0])]));
        assert_eq!(g.exact_div(&f), Err(PolyError::InexactDivision));
    }

    fn monomial() -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0u32..4, 3).prop_map(Monomial::new)
    }

    fn poly(ring: Arc<PolyRing>) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((monomial(), -3i64..4), 0..5).prop_map(move |ts| {
            Polynomial::from_terms(&ring, ts.into_iter().map(|(m, c)| (m, ring.field().from_int(c))))
        })
    }

    fn kinds() -> impl Strategy<Value = OrderKind> {
        prop::sample::select(vec![OrderKind::Grevlex, OrderKind::Lex, OrderKind::Elimination(1), OrderKind::Elimination(2)])
    }

    proptest! {
        #[test]
        fn ring_axioms(f in poly(xyz(Field::Rationals, OrderKind::Grevlex)),
                       g in poly(xyz(Field::Rationals, OrderKind::Grevlex)),
                       h in poly(xyz(Field::Rationals, OrderKind::Grevlex))) {
            prop_assert_eq!(f.mul_unchecked(&g).mul_unchecked(&h), f.mul_unchecked(&g.mul_unchecked(&h)));
            prop_assert_eq!(f.mul_unchecked(&g.add_unchecked(&h)), f.mul_unchecked(&g).add_unchecked(&f.mul_unchecked(&h)));
            prop_assert_eq!(f.mul_unchecked(&g), g.mul_unchecked(&f));
            prop_assert!(f.add_unchecked(&f.neg()).is_zero());
        }

        #[test]
        fn leading_term_multiplicative(f in poly(xyz(Field::Prime(7), OrderKind::Lex)),
                                       g in poly(xyz(Field::Prime(7), OrderKind::Lex))) {
            prop_assume!(!f.is_zero() && !g.is_zero());
            let fg = f.mul_unchecked(&g);
            let (mf, cf) = f.leading_term().unwrap();
            let (mg, cg) = g.leading_term().unwrap();
            let (m, c) = fg.leading_term().unwrap();
            prop_assert_eq!(m, &mf.mul(mg));
            prop_assert_eq!(c, &cf.mul(cg));
        }

        #[test]
        fn orders_are_multiplicative(kind in kinds(), a in monomial(), b in monomial(), c in monomial()) {
            let ord = MonomialOrder::new(kind, 3);
            let o = ord.cmp(&a, &b);
            prop_assert_eq!(ord.cmp(&a.mul(&c), &b.mul(&c)), o);
            prop_assert_eq!(ord.cmp(&b, &a), o.reverse());
            prop_assert_eq!(o == Ordering::Equal, a == b);
        }
    }
}
