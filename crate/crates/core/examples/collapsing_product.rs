//! Distinct primes can have a product equal to one of them:
//! in GF(2)[x,y,z]/(xy - z, yz - x) the primes p = (x,y,z) and q = (x,z)
//! satisfy p·q = q although p ≠ q.
use gpif::poly::{Field, Monomial, OrderKind, PolyRing, Polynomial};
use gpif::symbolic::{QuotIdeal, QuotientCtx};
use std::sync::Arc;

fn poly(ring: &Arc<PolyRing>, terms: &[(i64, [u32; 3])]) -> Polynomial {
    let f = ring.field().clone();
    Polynomial::from_terms(ring, terms.iter().map(|(c, e)| (Monomial::new(e.to_vec()), f.from_int(*c))))
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let vars = vec!["x".to_string(), "y".to_string(), "z".to_string()];
    let ring = PolyRing::new(vars, Field::prime(2)?, OrderKind::Grevlex)?;
    let base = vec![poly(&ring, &[(1, [1, 1, 0]), (-1, [0, 0, 1])]), poly(&ring, &[(1, [0, 1, 1]), (-1, [1, 0, 0])])];
    let ctx = QuotientCtx::new(&ring, base)?;
    let (x, y, z) = (poly(&ring, &[(1, [1, 0, 0])]), poly(&ring, &[(1, [0, 1, 0])]), poly(&ring, &[(1, [0, 0, 1])]));
    let p = QuotIdeal::new(&ctx, vec![x.clone(), y, z.clone()]);
    let q = QuotIdeal::new(&ctx, vec![x, z]);

    println!("base ideal GB: {}", ctx.base());
    println!("p·q == q: {}", p.product(&q)?.quot_eq(&q)?);
    println!("p == q: {}", p.quot_eq(&q)?);
    println!("q ⊆ p: {}", q.is_subset(&p)?);
    Ok(())
}
