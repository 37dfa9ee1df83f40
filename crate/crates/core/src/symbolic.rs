//! Ideals of quotient rings `k[x…]/I₀`, represented by lifts to the ambient
//! polynomial ring. Two quotient ideals are equal iff their lifts plus `I₀`
//! are equal ambient ideals.
//!
//! Also home of the power-stabilization test and the obstruction certificate
//! that rules out `p^r` as the factorization of any submodule: an ideal
//! `a ⊋ p` with `p^{r−1}·a ⊆ p^r` forces `a ⊆ p` in any RPE filtration with
//! prime sequence `p, …, p`, a contradiction.

use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::groebner::{IdealError, IdealSym};
use crate::poly::{PolyRing, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("base ideal is the unit ideal")]
    ImproperBase,
    #[error("ideals belong to different quotient rings")]
    ContextMismatch,
    #[error("obstruction certificates need r >= 2, got {0}")]
    ExponentTooSmall(u32),
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

/// The ring `k[x…]/I₀`.
#[derive(Debug)]
pub struct QuotientCtx {
    ring: Arc<PolyRing>,
    base: IdealSym,
}

impl QuotientCtx {
    pub fn new(ring: &Arc<PolyRing>, base_gens: Vec<Polynomial>) -> Result<Arc<Self>, QuotientError> {
        let base = IdealSym::new(ring, base_gens)?;
        if base.is_unit() {
            return Err(QuotientError::ImproperBase);
        }
        Ok(Arc::new(QuotientCtx {
            ring: ring.clone(),
            base,
        }))
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn base(&self) -> &IdealSym {
        &self.base
    }

    /// The ideal generated by the images of all variables.
    pub fn variables_ideal(self: &Arc<Self>) -> QuotIdeal {
        let n = self.ring.nvars();
        QuotIdeal::new(self, (0..n).map(|i| Polynomial::var(&self.ring, i)).collect())
    }

    pub fn unit_ideal(self: &Arc<Self>) -> QuotIdeal {
        QuotIdeal::new(self, vec![Polynomial::one(&self.ring)])
    }
}

/// An ideal of the quotient ring, stored as lift generators.
#[derive(Debug, Clone)]
pub struct QuotIdeal {
    ctx: Arc<QuotientCtx>,
    gens: Vec<Polynomial>,
    lift: OnceLock<IdealSym>,
}

impl QuotIdeal {
    pub fn new(ctx: &Arc<QuotientCtx>, gens: Vec<Polynomial>) -> Self {
        QuotIdeal {
            ctx: ctx.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            lift: OnceLock::new(),
        }
    }

    pub fn ctx(&self) -> &Arc<QuotientCtx> {
        &self.ctx
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    /// `lift + I₀` in the ambient ring.
    pub fn full_lift(&self) -> &IdealSym {
        self.lift.get_or_init(|| {
            let gens = self.gens.iter().chain(self.ctx.base.gens()).cloned();
            IdealSym::new(&self.ctx.ring, gens.collect::<Vec<_>>()).expect("generators share the ambient ring")
        })
    }

    fn check(&self, other: &QuotIdeal) -> Result<(), QuotientError> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(QuotientError::ContextMismatch)
        }
    }

    pub fn quot_eq(&self, other: &QuotIdeal) -> Result<bool, QuotientError> {
        self.check(other)?;
        Ok(self.full_lift().ideal_eq(other.full_lift())?)
    }

    /// `self ⊆ other` in the quotient.
    pub fn is_subset(&self, other: &QuotIdeal) -> Result<bool, QuotientError> {
        self.check(other)?;
        Ok(self.full_lift().is_subset(other.full_lift())?)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool, QuotientError> {
        Ok(self.full_lift().contains(f)?)
    }

    pub fn is_unit(&self) -> bool {
        self.full_lift().is_unit()
    }

    pub fn sum(&self, other: &QuotIdeal) -> Result<QuotIdeal, QuotientError> {
        self.check(other)?;
        Ok(QuotIdeal::new(&self.ctx, self.gens.iter().chain(&other.gens).cloned().collect()))
    }

    /// Product of lifts, renormalized to the reduced basis of `A·B + I₀` to
    /// keep generator counts small.
    pub fn product(&self, other: &QuotIdeal) -> Result<QuotIdeal, QuotientError> {
        self.check(other)?;
        let raw = IdealSym::new(&self.ctx.ring, self.gens.clone())?
            .product(&IdealSym::new(&self.ctx.ring, other.gens.clone())?)?;
        let with_base = raw.sum(&self.ctx.base)?;
        Ok(QuotIdeal::new(&self.ctx, with_base.gb().to_vec()))
    }

    /// `self^r`, with `self^0 = (1)`.
    pub fn power(&self, r: u32) -> QuotIdeal {
        let mut acc = self.ctx.unit_ideal();
        for _ in 0..r {
            acc = acc.product(self).expect("same context");
        }
        acc
    }
}

impl fmt::Display for QuotIdeal {
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

pub fn quot_ideal_eq(a: &QuotIdeal, b: &QuotIdeal) -> Result<bool, QuotientError> {
    a.quot_eq(b)
}

/// True iff `p^r = p^{r−1}` in the quotient ring.
pub fn power_stabilizes(p: &QuotIdeal, r: u32) -> bool {
    assert!(r >= 1, "power_stabilizes needs r >= 1");
    let prev = p.power(r - 1);
    let cur = prev.product(p).expect("same context");
    cur.quot_eq(&prev).expect("same context")
}

/// First candidate `a` with `a ⊋ p` and `p^{r−1}·a ⊆ p^r`, if any.
pub fn obstruction_certificate(
    p: &QuotIdeal,
    r: u32,
    candidates: &[QuotIdeal],
) -> Result<Option<QuotIdeal>, QuotientError> {
    if r < 2 {
        return Err(QuotientError::ExponentTooSmall(r));
    }
    let p_prev = p.power(r - 1);
    let p_r = p_prev.product(p)?;
    for a in candidates {
        p.check(a)?;
        let strictly_larger = p.is_subset(a)? && !a.is_subset(p)?;
        if strictly_larger && p_prev.product(a)?.is_subset(&p_r)? {
            return Ok(Some(a.clone()));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::test_support::{p, xyz};
    use crate::poly::{Field, OrderKind};

    const X: [u32; 3] = [1, 0, 0];
    const Y: [u32; 3] = [0, 1, 0];
    const Z: [u32; 3] = [0, 0, 1];

    /// k[x,y,z]/(xy − z², x² − yz)
    fn cone(field: Field) -> Arc<QuotientCtx> {
        let r = xyz(field, OrderKind::Grevlex);
        let base = vec![
            p(&r, &[(1, [1, 1, 0]), (-1, [0, 0, 2])]),
            p(&r, &[(1, [2, 0, 0]), (-1, [0, 1, 1])]),
        ];
        QuotientCtx::new(&r, base).unwrap()
    }

    /// k[x,y,z]/(xy − z, yz − x)
    fn remark(field: Field) -> Arc<QuotientCtx> {
        let r = xyz(field, OrderKind::Grevlex);
        let base = vec![p(&r, &[(1, [1, 1, 0]), (-1, Z)]), p(&r, &[(1, [0, 1, 1]), (-1, X)])];
        QuotientCtx::new(&r, base).unwrap()
    }

    fn ideal(ctx: &Arc<QuotientCtx>, gens: &[[u32; 3]]) -> QuotIdeal {
        QuotIdeal::new(ctx, gens.iter().map(|e| p(ctx.ring(), &[(1, *e)])).collect())
    }

    #[test]
    fn cone_identity_and_obstruction() {
        for field in [Field::Rationals, Field::Prime(2), Field::Prime(3)] {
            let ctx = cone(field);
            let pr = ideal(&ctx, &[X, Z]);
            let m = ctx.variables_ideal();
            assert!(quot_ideal_eq(&pr.product(&m).unwrap(), &pr.power(2)).unwrap());
            assert!(!power_stabilizes(&pr, 2));
            assert!(!power_stabilizes(&pr, 1));
            let cert = obstruction_certificate(&pr, 2, std::slice::from_ref(&m)).unwrap().unwrap();
            assert!(cert.quot_eq(&m).unwrap());
            // independent re-check of both certificate conditions
            assert!(pr.product(&cert).unwrap().sum(&pr.power(2)).unwrap().quot_eq(&pr.power(2)).unwrap());
            assert!(!cert.is_subset(&pr).unwrap());
            assert!(obstruction_certificate(&pr, 2, std::slice::from_ref(&pr)).unwrap().is_none());
        }
    }

    #[test]
    fn remark_identity() {
        for field in [Field::Rationals, Field::Prime(2)] {
            let ctx = remark(field);
            let pr = ideal(&ctx, &[X, Y, Z]);
            let q = ideal(&ctx, &[X, Z]);
            assert!(pr.product(&q).unwrap().quot_eq(&q).unwrap());
            // q^2 != q: x(1 - y^2) = 0 in R, but x is not in q^2 + I0.
            assert!(!power_stabilizes(&q, 2));
        }
        // reduced basis of q^2 + I0 over QQ, frozen from an external CAS run
        let ctx = remark(Field::Rationals);
        let r = ctx.ring().clone();
        let q2 = ideal(&ctx, &[X, Z]).power(2);
        let expected = vec![
            p(&r, &[(1, [2, 0, 0])]),
            p(&r, &[(1, [1, 1, 0]), (-1, Z)]),
            p(&r, &[(1, [1, 0, 1])]),
            p(&r, &[(1, [0, 1, 1]), (-1, X)]),
            p(&r, &[(1, [0, 0, 2])]),
        ];
        assert_eq!(q2.full_lift().gb(), expected.as_slice());
    }

    #[test]
    fn no_certificate_in_polynomial_ring() {
        let r = PolyRing::new(vec!["x".into(), "y".into()], Field::Rationals, OrderKind::Grevlex).unwrap();
        let ctx = QuotientCtx::new(&r, vec![]).unwrap();
        let x = QuotIdeal::new(&ctx, vec![Polynomial::var(&r, 0)]);
        let xy = QuotIdeal::new(&ctx, vec![Polynomial::var(&r, 0), Polynomial::var(&r, 1)]);
        assert!(obstruction_certificate(&x, 2, &[xy]).unwrap().is_none());
        assert_eq!(
            obstruction_certificate(&x, 1, &[]).unwrap_err(),
            QuotientError::ExponentTooSmall(1)
        );
    }

    #[test]
    fn stabilization_is_monotone() {
        let r = PolyRing::new(vec!["x".into()], Field::Rationals, OrderKind::Grevlex).unwrap();
        // x^2 = x in k[x]/(x^2 - x): the idempotent ideal stabilizes from r = 2 on
        let ctx = QuotientCtx::new(&r, vec![Polynomial::var(&r, 0).pow(2).checked_sub(&Polynomial::var(&r, 0)).unwrap()]).unwrap();
        let x = QuotIdeal::new(&ctx, vec![Polynomial::var(&r, 0)]);
        let seq: Vec<bool> = (1..=4).map(|k| power_stabilizes(&x, k)).collect();
        assert_eq!(seq, vec![false, true, true, true]);
        for w in seq.windows(2) {
            assert!(!w[0] || w[1]);
        }
    }

    #[test]
    fn improper_base_rejected() {
        let r = xyz(Field::Rationals, OrderKind::Grevlex);
        let err = QuotientCtx::new(&r, vec![p(&r, &[(1, X)]), p(&r, &[(1, X), (-1, [0, 0, 0])])]).unwrap_err();
        assert_eq!(err, QuotientError::ImproperBase);
    }

    #[test]
    fn context_mismatch() {
        let a = cone(Field::Rationals).variables_ideal();
        let b = cone(Field::Rationals).variables_ideal();
        assert_eq!(a.quot_eq(&b).unwrap_err(), QuotientError::ContextMismatch);
    }
}
