//! Ideal lattices and prime ideals of small finite rings.
use gpif::finring::{build_ring, fin_ideal_ops, IdealOp, RingSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let specs = [
        RingSpec::Zmod(12),
        RingSpec::Gf(7),
        RingSpec::Product(vec![RingSpec::Zmod(2), RingSpec::Zmod(4)]),
    ];
    for spec in &specs {
        let ring = build_ring(spec)?;
        println!("{spec} ({} elements)", ring.size());
        let ideals = ring.all_ideals()?;
        for i in &ideals {
            println!("  ideal {i}  size {}", i.len());
        }
        for p in ring.primes()? {
            println!("  prime {p}");
        }
    }

    let z12 = build_ring(&RingSpec::Zmod(12))?;
    let two = z12.ideal_closure(&[2]);
    let three = z12.ideal_closure(&[3]);
    println!("in Z/12:");
    println!("  (2)·(3) = {}", fin_ideal_ops(&two, &three, IdealOp::Product)?);
    println!("  (2) ∩ (3) = {}", fin_ideal_ops(&two, &three, IdealOp::Intersection)?);
    println!("  (2) + (3) = {}", fin_ideal_ops(&two, &three, IdealOp::Sum)?);
    println!("  (2)^2 = {}", fin_ideal_ops(&two, &two, IdealOp::Product)?);
    Ok(())
}
