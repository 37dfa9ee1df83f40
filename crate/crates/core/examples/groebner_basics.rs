//! Gröbner bases and ideal arithmetic in GF(2)[x,y,z] and QQ[x,y,z].
use gpif::groebner::{buchberger, reduce, IdealSym};
use gpif::poly::{Field, Monomial, OrderKind, PolyRing, Polynomial};
use std::sync::Arc;

fn poly(ring: &Arc<PolyRing>, terms: &[(i64, [u32; 3])]) -> Polynomial {
    let f = ring.field().clone();
    Polynomial::from_terms(ring, terms.iter().map(|(c, e)| (Monomial::new(e.to_vec()), f.from_int(*c))))
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let vars = vec!["x".to_string(), "y".to_string(), "z".to_string()];
    for field in [Field::prime(2)?, Field::Rationals] {
        let ring = PolyRing::new(vars.clone(), field.clone(), OrderKind::Grevlex)?;
        let f1 = poly(&ring, &[(1, [1, 1, 0]), (-1, [0, 0, 2])]);
        let f2 = poly(&ring, &[(1, [2, 0, 0]), (-1, [0, 1, 1])]);
        println!("over {field}:");
        let gb = buchberger(&[f1.clone(), f2.clone()]);
        for g in &gb {
            println!("  gb: {g}");
        }

        let z2 = poly(&ring, &[(1, [0, 0, 2])]);
        let x = poly(&ring, &[(1, [1, 0, 0])]);
        let raw = [f1.clone(), x.clone()];
        println!("  z^2 mod [x*y - z^2, x] = {}", reduce(&z2, &raw));
        println!("  z^2 mod GB(x*y - z^2, x) = {}", reduce(&z2, &buchberger(&raw)));

        let i = IdealSym::new(&ring, [f1, f2])?;
        let p = IdealSym::new(&ring, [x.clone(), poly(&ring, &[(1, [0, 0, 1])])])?;
        println!("  I ⊆ (x, z): {}", i.is_subset(&p)?);
        println!("  I : (x) = {}", i.colon_poly(&x)?);
        println!("  I ∩ (x) = {}", i.intersection(&IdealSym::new(&ring, [x])?)?);
        println!("  (x, z)^2 = {}", p.power(2));

        let lex = ring.with_order(OrderKind::Lex);
        let g = buchberger(&[poly(&lex, &[(1, [1, 0, 0]), (-1, [0, 2, 0])]), poly(&lex, &[(1, [0, 1, 0]), (-1, [0, 0, 3])])]);
        println!("  lex GB of (x - y^2, y - z^3): {}", g.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", "));
    }
    Ok(())
}
