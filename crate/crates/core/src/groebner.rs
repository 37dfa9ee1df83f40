//! Buchberger's algorithm and ideal calculus in polynomial rings.
//!
//! Ideals cache their reduced Gröbner basis (write-once, under the ring's own
//! term order). Intersection and colon go through an auxiliary variable and an
//! elimination order.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::poly::{same_ring, Monomial, OrderKind, PolyError, PolyRing, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("ideals live in different rings")]
    RingMismatch,
    #[error("colon by the zero ideal")]
    ColonByZero,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Normal form of `f` modulo `basis`: terms are processed from the top, each
/// reduced by the first basis element (in listed order) whose leading monomial
/// divides it.
pub fn reduce(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let ring = f.ring().clone();
    let leads: Vec<_> = basis
        .iter()
        .filter(|b| !b.is_zero())
        .map(|b| {
            let (m, c) = b.leading_term().unwrap();
            (b, m.clone(), c.inverse().expect("nonzero leading coefficient"))
        })
        .collect();
    let mut rest = f.clone();
    let mut remainder: Vec<(Monomial, _)> = Vec::new();
    while let Some((m, c)) = rest.terms().first().cloned() {
        match leads.iter().find(|(_, lm, _)| lm.divides(&m)) {
            Some((b, lm, lc_inv)) => {
                let factor = c.mul(lc_inv).neg();
                rest = rest.add_unchecked(&b.mul_term(&lm.quotient_of(&m), &factor));
            }
            None => {
                remainder.push((m.clone(), c.clone()));
                rest = rest.add_unchecked(&Polynomial::term(&ring, m, c.neg()));
            }
        }
    }
    // Remainder terms were emitted in descending order already.
    Polynomial::from_terms(&ring, remainder)
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (mf, cf) = f.leading_term().unwrap();
    let (mg, cg) = g.leading_term().unwrap();
    let l = mf.lcm(mg);
    let a = f.mul_term(&mf.quotient_of(&l), &cf.inverse().unwrap());
    let b = g.mul_term(&mg.quotient_of(&l), &cg.inverse().unwrap());
    a.add_unchecked(&b.neg())
}

/// Reduced Gröbner basis of the ideal generated by `gens` under the ring order:
/// monic, inter-reduced, sorted by descending leading monomial. Pairs are
/// processed smallest-lcm-degree first and skipped when their leading
/// monomials are coprime.
pub fn buchberger(gens: &[Polynomial]) -> Vec<Polynomial> {
    let mut basis: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    if basis.is_empty() {
        return basis;
    }
    let ring = basis[0].ring().clone();
    if basis.iter().any(|g| g.is_constant()) {
        return vec![Polynomial::one(&ring)];
    }
    let mut queue = BinaryHeap::new();
    let push = |queue: &mut BinaryHeap<_>, basis: &[Polynomial], i: usize, j: usize| {
        let li = basis[i].leading_monomial().unwrap();
        let lj = basis[j].leading_monomial().unwrap();
        queue.push(Reverse((li.lcm(lj).degree(), j, i)));
    };
    for j in 0..basis.len() {
        for i in 0..j {
            push(&mut queue, &basis, i, j);
        }
    }
    while let Some(Reverse((_, j, i))) = queue.pop() {
        let (li, lj) = (basis[i].leading_monomial().unwrap(), basis[j].leading_monomial().unwrap());
        if li.coprime(lj) {
            continue;
        }
        let r = reduce(&s_polynomial(&basis[i], &basis[j]), &basis);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return vec![Polynomial::one(&ring)];
        }
        basis.push(r.monic());
        let k = basis.len() - 1;
        for i in 0..k {
            push(&mut queue, &basis, i, k);
        }
    }
    reduced_form(basis)
}

fn reduced_form(basis: Vec<Polynomial>) -> Vec<Polynomial> {
    let ord = *basis[0].ring().order();
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let lm = g.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let lh = h.leading_monomial().unwrap();
            j != i && lh.divides(lm) && (lh != lm || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced: Vec<Polynomial> = (0..minimal.len())
        .map(|i| {
            let others: Vec<Polynomial> = minimal
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, h)| h.clone())
                .collect();
            reduce(&minimal[i], &others).monic()
        })
        .collect();
    reduced.sort_by(|a, b| ord.cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    reduced
}

/// An ideal of a polynomial ring, given by generators.
#[derive(Debug, Clone)]
pub struct IdealSym {
    ring: Arc<PolyRing>,
    gens: Vec<Polynomial>,
    gb: OnceLock<Vec<Polynomial>>,
}

impl IdealSym {
    pub fn new(ring: &Arc<PolyRing>, gens: impl IntoIterator<Item = Polynomial>) -> Result<Self, IdealError> {
        let gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        if gens.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(IdealError::RingMismatch);
        }
        Ok(IdealSym {
            ring: ring.clone(),
            gens,
            gb: OnceLock::new(),
        })
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        IdealSym::new(ring, []).unwrap()
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Self {
        IdealSym::new(ring, [Polynomial::one(ring)]).unwrap()
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// The reduced Gröbner basis, computed once.
    pub fn gb(&self) -> &[Polynomial] {
        self.gb.get_or_init(|| buchberger(&self.gens))
    }

    pub fn is_unit(&self) -> bool {
        matches!(self.gb(), [g] if g.is_constant())
    }

    fn check(&self, other: &IdealSym) -> Result<(), IdealError> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(IdealError::RingMismatch)
        }
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool, IdealError> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(IdealError::RingMismatch);
        }
        Ok(reduce(f, self.gb()).is_zero())
    }

    /// `self ⊆ other`.
    pub fn is_subset(&self, other: &IdealSym) -> Result<bool, IdealError> {
        self.check(other)?;
        let gb = other.gb();
        Ok(self.gens.iter().all(|g| reduce(g, gb).is_zero()))
    }

    pub fn ideal_eq(&self, other: &IdealSym) -> Result<bool, IdealError> {
        self.check(other)?;
        Ok(self.gb() == other.gb())
    }

    pub fn sum(&self, other: &IdealSym) -> Result<IdealSym, IdealError> {
        self.check(other)?;
        IdealSym::new(&self.ring, self.gens.iter().chain(&other.gens).cloned())
    }

    pub fn product(&self, other: &IdealSym) -> Result<IdealSym, IdealError> {
        self.check(other)?;
        let gens = self
            .gens
            .iter()
            .flat_map(|f| other.gens.iter().map(move |g| f.mul_unchecked(g)));
        IdealSym::new(&self.ring, gens.collect::<Vec<_>>())
    }

    /// `self^r` by iterated products, dropping repeated generators; `self^0 = (1)`.
    pub fn power(&self, r: u32) -> IdealSym {
        let mut acc = IdealSym::unit(&self.ring);
        for _ in 0..r {
            let mut next = acc.product(self).unwrap();
            let mut seen: Vec<Polynomial> = Vec::new();
            for g in next.gens.drain(..) {
                if !seen.contains(&g) {
                    seen.push(g);
                }
            }
            acc = IdealSym::new(&self.ring, seen).unwrap();
        }
        acc
    }

    /// `self ∩ other` as the t-free part of `t·self + (1 − t)·other`.
    pub fn intersection(&self, other: &IdealSym) -> Result<IdealSym, IdealError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(IdealSym::zero(&self.ring));
        }
        let mut vars = vec![aux_name(&self.ring)];
        vars.extend(self.ring.vars().iter().cloned());
        let aux = PolyRing::new(vars, self.ring.field().clone(), OrderKind::Elimination(1))?;
        let lift = |f: &Polynomial| {
            f.map_into(&aux, |m| {
                let mut e = vec![0];
                e.extend_from_slice(m.exps());
                Monomial::new(e)
            })
        };
        let t = Polynomial::var(&aux, 0);
        let one_minus_t = Polynomial::one(&aux).add_unchecked(&t.neg());
        let mut gens: Vec<Polynomial> = self.gens.iter().map(|f| lift(f).mul_unchecked(&t)).collect();
        gens.extend(other.gens.iter().map(|g| lift(g).mul_unchecked(&one_minus_t)));
        let gb = buchberger(&gens);
        let kept = gb
            .iter()
            .filter(|g| g.leading_monomial().unwrap().exps()[0] == 0)
            .map(|g| g.map_into(&self.ring, |m| Monomial::new(m.exps()[1..].to_vec())));
        IdealSym::new(&self.ring, kept.collect::<Vec<_>>())
    }

    /// `(self : f) = (self ∩ (f)) / f`.
    pub fn colon_poly(&self, f: &Polynomial) -> Result<IdealSym, IdealError> {
        if f.is_zero() {
            return Err(IdealError::ColonByZero);
        }
        let principal = IdealSym::new(&self.ring, [f.clone()])?;
        let meet = self.intersection(&principal)?;
        let gens = meet
            .gens
            .iter()
            .map(|g| g.exact_div(f))
            .collect::<Result<Vec<_>, _>>()?;
        IdealSym::new(&self.ring, gens)
    }

    /// `(self : other) = ⋂_{f ∈ gens(other)} (self : f)`.
    pub fn colon(&self, other: &IdealSym) -> Result<IdealSym, IdealError> {
        self.check(other)?;
        let mut gens = other.gens.iter();
        let first = gens.next().ok_or(IdealError::ColonByZero)?;
        let mut acc = self.colon_poly(first)?;
        for f in gens {
            acc = acc.intersection(&self.colon_poly(f)?)?;
        }
        Ok(acc)
    }
}

fn aux_name(ring: &PolyRing) -> String {
    let mut name = String::from("_t");
    while ring.var_index(&name).is_some() {
        name.push('_');
    }
    name
}

pub fn ideal_membership(f: &Polynomial, ideal: &IdealSym) -> Result<bool, IdealError> {
    ideal.contains(f)
}

pub fn ideal_eq(a: &IdealSym, b: &IdealSym) -> Result<bool, IdealError> {
    a.ideal_eq(b)
}

impl fmt::Display for IdealSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "(0)");
        }
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::test_support::{p, xyz};
    use crate::poly::Field;
    use proptest::prelude::*;

    fn grevlex_q() -> Arc<PolyRing> {
        xyz(Field::Rationals, OrderKind::Grevlex)
    }

    const X: [u32; 3] = [1, 0, 0];
    const Y: [u32; 3] = [0, 1, 0];
    const Z: [u32; 3] = [0, 0, 1];

    #[test]
    fn reduce_examples() {
        let r = grevlex_q();
        let x = p(&r, &[(1, X)]);
        assert!(reduce(&p(&r, &[(1, [1, 1, 0])]), std::slice::from_ref(&x)).is_zero());
        assert_eq!(reduce(&p(&r, &[(1, X), (1, Y)]), std::slice::from_ref(&x)), p(&r, &[(1, Y)]));
        // LM(xy - z^2) = xy under grevlex, so z^2 is already in normal form even
        // though it lies in the ideal; full membership needs the Gröbner basis.
        let xy_z2 = p(&r, &[(1, [1, 1, 0]), (-1, [0, 0, 2])]);
        let z2 = p(&r, &[(1, [0, 0, 2])]);
        let basis = [xy_z2.clone(), x.clone()];
        assert_eq!(reduce(&z2, &basis), z2);
        assert_eq!(reduce(&p(&r, &[(1, [1, 1, 0])]), std::slice::from_ref(&xy_z2)), z2);
        assert!(reduce(&z2, &buchberger(&basis)).is_zero());
    }

    #[test]
    fn buchberger_examples() {
        let r = grevlex_q();
        let gb = buchberger(&[p(&r, &[(1, X)]), p(&r, &[(1, X), (1, Y)])]);
        assert_eq!(gb, vec![p(&r, &[(1, X)]), p(&r, &[(1, Y)])]);
        let gb = buchberger(&[p(&r, &[(1, X)]), p(&r, &[(1, X), (-1, [0, 0, 0])])]);
        assert_eq!(gb, vec![Polynomial::one(&r)]);
        let lex = xyz(Field::Rationals, OrderKind::Lex);
        let gens = [p(&lex, &[(1, [2, 0, 0])]), p(&lex, &[(1, [1, 1, 0])])];
        assert_eq!(buchberger(&gens), gens.to_vec());
    }

    #[test]
    fn membership_examples() {
        let r = grevlex_q();
        let ideal = |ts: &[&[(i64, [u32; 3])]]| IdealSym::new(&r, ts.iter().map(|t| p(&r, t))).unwrap();
        assert!(ideal(&[&[(1, X)]]).contains(&p(&r, &[(1, [1, 1, 0])])).unwrap());
        assert!(!ideal(&[&[(1, X)], &[(1, Y)]]).contains(&p(&r, &[(1, [0, 0, 2])])).unwrap());
        let big = ideal(&[
            &[(1, [2, 0, 0])],
            &[(1, [1, 0, 1])],
            &[(1, [0, 0, 2])],
            &[(1, [1, 1, 0]), (-1, [0, 0, 2])],
            &[(1, [2, 0, 0]), (-1, [0, 1, 1])],
        ]);
        assert!(!big.contains(&p(&r, &[(1, X)])).unwrap());
    }

    #[test]
    fn equality_and_ops() {
        let r = grevlex_q();
        let i = |ts: &[&[(i64, [u32; 3])]]| IdealSym::new(&r, ts.iter().map(|t| p(&r, t))).unwrap();
        assert!(i(&[&[(1, X)], &[(1, Y)]]).ideal_eq(&i(&[&[(1, X), (1, Y)], &[(1, Y)]])).unwrap());
        assert!(!i(&[&[(1, X)]]).ideal_eq(&i(&[&[(1, [2, 0, 0])]])).unwrap());
        let prod = i(&[&[(1, X)]]).product(&i(&[&[(1, X)], &[(1, Y)]])).unwrap();
        assert!(i(&[&[(1, [2, 0, 0])], &[(1, [1, 1, 0])]]).ideal_eq(&prod).unwrap());

        let pxz = i(&[&[(1, X)], &[(1, Z)]]);
        let m = i(&[&[(1, X)], &[(1, Y)], &[(1, Z)]]);
        assert_eq!(pxz.product(&m).unwrap().gens().len(), 6);
        assert!(pxz.power(0).is_unit());
        assert_eq!(
            pxz.power(2).gens(),
            &[p(&r, &[(1, [2, 0, 0])]), p(&r, &[(1, [1, 0, 1])]), p(&r, &[(1, [0, 0, 2])])]
        );
    }

    #[test]
    fn intersection_examples() {
        let r = grevlex_q();
        let i = |ts: &[&[(i64, [u32; 3])]]| IdealSym::new(&r, ts.iter().map(|t| p(&r, t))).unwrap();
        let x = i(&[&[(1, X)]]);
        let y = i(&[&[(1, Y)]]);
        assert!(x.intersection(&y).unwrap().ideal_eq(&i(&[&[(1, [1, 1, 0])]])).unwrap());
        assert!(x.intersection(&x).unwrap().ideal_eq(&x).unwrap());
        let xy = i(&[&[(1, X)], &[(1, Y)]]);
        let z = i(&[&[(1, Z)]]);
        let meet = xy.intersection(&z).unwrap();
        let expected = i(&[&[(1, [1, 0, 1])], &[(1, [0, 1, 1])]]);
        // containment both ways
        assert!(meet.is_subset(&expected).unwrap() && expected.is_subset(&meet).unwrap());
    }

    #[test]
    fn colon_examples() {
        let r = grevlex_q();
        let i = |ts: &[&[(i64, [u32; 3])]]| IdealSym::new(&r, ts.iter().map(|t| p(&r, t))).unwrap();
        let x = i(&[&[(1, X)]]);
        assert!(i(&[&[(1, [2, 0, 0])]]).colon(&x).unwrap().ideal_eq(&x).unwrap());
        assert!(i(&[&[(1, [1, 1, 0])]]).colon(&x).unwrap().ideal_eq(&i(&[&[(1, Y)]])).unwrap());
        let big = i(&[&[(1, [1, 1, 0]), (-1, [0, 0, 2])], &[(1, [2, 0, 0]), (-1, [0, 1, 1])]]);
        assert!(big.colon(&IdealSym::unit(&r)).unwrap().ideal_eq(&big).unwrap());
        assert_eq!(big.colon(&IdealSym::zero(&r)).unwrap_err(), IdealError::ColonByZero);
    }

    #[test]
    fn mismatch_detected() {
        let a = IdealSym::unit(&grevlex_q());
        let b = IdealSym::unit(&xyz(Field::Prime(3), OrderKind::Grevlex));
        assert_eq!(a.sum(&b).unwrap_err(), IdealError::RingMismatch);
    }

    fn small_poly(ring: Arc<PolyRing>) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((prop::collection::vec(0u32..3, 3), -2i64..3), 1..4).prop_map(move |ts| {
            Polynomial::from_terms(
                &ring,
                ts.into_iter().map(|(e, c)| (Monomial::new(e), ring.field().from_int(c))),
            )
        })
    }

    fn gens(ring: Arc<PolyRing>) -> impl Strategy<Value = Vec<Polynomial>> {
        prop::collection::vec(small_poly(ring), 1..4)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn gb_independent_of_generator_order(g in gens(xyz(Field::Prime(7), OrderKind::Grevlex)), seed in any::<u64>()) {
            let mut shuffled = g.clone();
            let n = shuffled.len();
            for k in 0..n {
                shuffled.swap(k, (seed as usize >> k) % n);
            }
            prop_assert_eq!(buchberger(&g), buchberger(&shuffled));
        }

        #[test]
        fn lattice_laws(a in gens(xyz(Field::Prime(5), OrderKind::Grevlex)), b in gens(xyz(Field::Prime(5), OrderKind::Grevlex))) {
            let r = a[0].ring().clone();
            let i = IdealSym::new(&r, a).unwrap();
            let j = IdealSym::new(&r, b).unwrap();
            let sum = i.sum(&j).unwrap();
            prop_assert!(i.is_subset(&sum).unwrap());
            let meet = i.intersection(&j).unwrap();
            prop_assert!(i.product(&j).unwrap().is_subset(&meet).unwrap());
            prop_assert!(meet.is_subset(&i).unwrap() && meet.is_subset(&j).unwrap());
            if !j.is_zero() {
                let colon = i.colon(&j).unwrap();
                prop_assert!(colon.product(&j).unwrap().is_subset(&i).unwrap());
            }
            prop_assert!(i.ideal_eq(&i).unwrap());
            prop_assert_eq!(i.ideal_eq(&j).unwrap(), j.ideal_eq(&i).unwrap());
        }

        #[test]
        fn combinations_are_members(a in gens(xyz(Field::Rationals, OrderKind::Grevlex)),
                                    coeffs in prop::collection::vec(small_poly(xyz(Field::Rationals, OrderKind::Grevlex)), 3)) {
            let r = a[0].ring().clone();
            let ideal = IdealSym::new(&r, a.clone()).unwrap();
            let mut f = Polynomial::zero(&r);
            for (g, c) in a.iter().zip(&coeffs) {
                f = f.add_unchecked(&g.mul_unchecked(c));
            }
            prop_assert!(ideal_membership(&f, &ideal).unwrap());
        }
    }
}
