//! The prime p = (x, z) in the cone GF(2)[x,y,z]/(xy - z², x² - yz):
//! p·m = p² for the maximal ideal m ⊋ p, so p² does not stabilize yet
//! m certifies that p² cannot be a module factorization ideal.
use gpif::poly::{Field, Monomial, OrderKind, PolyRing, Polynomial};
use gpif::symbolic::{obstruction_certificate, power_stabilizes, QuotIdeal, QuotientCtx};
use std::sync::Arc;

fn poly(ring: &Arc<PolyRing>, terms: &[(i64, [u32; 3])]) -> Polynomial {
    let f = ring.field().clone();
    Polynomial::from_terms(ring, terms.iter().map(|(c, e)| (Monomial::new(e.to_vec()), f.from_int(*c))))
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let vars = vec!["x".to_string(), "y".to_string(), "z".to_string()];
    for field in [Field::prime(2)?, Field::Rationals] {
        let ring = PolyRing::new(vars.clone(), field.clone(), OrderKind::Grevlex)?;
        let base = vec![poly(&ring, &[(1, [1, 1, 0]), (-1, [0, 0, 2])]), poly(&ring, &[(1, [2, 0, 0]), (-1, [0, 1, 1])])];
        let ctx = QuotientCtx::new(&ring, base)?;
        let (x, y, z) = (poly(&ring, &[(1, [1, 0, 0])]), poly(&ring, &[(1, [0, 1, 0])]), poly(&ring, &[(1, [0, 0, 1])]));
        let p = QuotIdeal::new(&ctx, vec![x.clone(), z.clone()]);
        let m = QuotIdeal::new(&ctx, vec![x, y, z]);

        println!("over {field}:");
        println!("  p·m == p²: {}", p.product(&m)?.quot_eq(&p.power(2))?);
        println!("  p² == p³: {}", power_stabilizes(&p, 3));
        match obstruction_certificate(&p, 2, std::slice::from_ref(&m))? {
            Some(a) => println!("  p² obstructed, certificate {a}"),
            None => println!("  no obstruction among the candidates"),
        }
        println!("  p¹ is always fine: {:?}", obstruction_certificate(&p, 1, &[m]).err().map(|e| e.to_string()));
    }
    Ok(())
}
