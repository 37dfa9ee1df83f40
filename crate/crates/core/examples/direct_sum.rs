//! Factorizations of direct sums: the factorization of N1 ⊕ N2 in
//! M1 ⊕ M2 combines the factorizations of the summands, taking the larger
//! exponent for each shared prime.
use gpif::finmod::{direct_sum, factorize, FiniteModule, PrimeFactorization};
use std::collections::BTreeMap;

fn max_merge(a: &PrimeFactorization, b: &PrimeFactorization) -> PrimeFactorization {
    let mut m = BTreeMap::new();
    for (p, e) in a.factors().iter().chain(b.factors()) {
        let slot = m.entry(p.clone()).or_insert(0);
        *slot = (*slot).max(*e);
    }
    PrimeFactorization::from_factors(m)
}
use gpif::finring::{build_ring, RingSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let z24 = build_ring(&RingSpec::Zmod(24))?;
    let a = FiniteModule::presented(&z24, 1, &[vec![8]])?;
    let b = FiniteModule::presented(&z24, 1, &[vec![12]])?;
    let na = a.zero_submodule();
    let nb = b.zero_submodule();
    let fa = factorize(&a, &na)?;
    let fb = factorize(&b, &nb)?;
    println!("Z/24 / (8) over 0: {fa}");
    println!("Z/24 / (12) over 0: {fb}");

    let (d, nd) = direct_sum(&[a.clone(), b.clone()], &[na, nb])?;
    let fd = factorize(&d, &nd)?;
    println!("sum of size {} over 0: {fd}", d.size());
    println!("exponent-wise maximum: {}", max_merge(&fa, &fb));
    println!("agree: {}", fd == max_merge(&fa, &fb));

    let ca = a.submodule_closure(&[a.from_coords(&[4])?]);
    let cb = b.submodule_closure(&[b.from_coords(&[3])?]);
    let (d, nd) = direct_sum(&[a.clone(), b.clone()], &[ca.clone(), cb.clone()])?;
    println!("over {ca} ⊕ {cb}: {} vs {}", factorize(&d, &nd)?, max_merge(&factorize(&a, &ca)?, &factorize(&b, &cb)?));
    Ok(())
}
