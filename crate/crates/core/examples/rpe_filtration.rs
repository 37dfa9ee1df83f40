//! Regular prime extension filtrations and prime factorizations of
//! submodules over Z/n, with interchange and reordering of steps.
use gpif::finmod::{
    factorize, interchange_step, reorder_filtration, rpe_filtration, FiniteModule, TieBreak,
};
use gpif::finring::{build_ring, RingSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let z8 = build_ring(&RingSpec::Zmod(8))?;
    let m = FiniteModule::presented(&z8, 1, &[])?;
    let zero = m.zero_submodule();
    println!("Z/8 over 0: {}", factorize(&m, &zero)?);
    println!("{}", rpe_filtration(&m, &zero, &TieBreak::Canonical)?);
    let four = m.submodule_closure(&[m.from_coords(&[4])?]);
    println!("Z/8 over {four}: {}", factorize(&m, &four)?);

    let z12 = build_ring(&RingSpec::Zmod(12))?;
    let m = FiniteModule::presented(&z12, 1, &[])?;
    let zero = m.zero_submodule();
    let f = rpe_filtration(&m, &zero, &TieBreak::Canonical)?;
    println!("Z/12 over 0: {}", f.factorization());
    println!("canonical:\n{f}");
    if let Some(i) = (1..f.len()).find(|&i| f.steps()[i - 1].0 != f.steps()[i].0) {
        let g = interchange_step(&f, i)?;
        println!("after swapping positions {i} and {}:\n{g}", i + 1);
    }
    let mut order = z12.primes()?;
    order.reverse();
    let r = reorder_filtration(&m.full(), &zero, &order)?;
    println!("primes in order {:?}:\n{r}", order.iter().map(|p| p.to_string()).collect::<Vec<_>>());

    let rank2 = FiniteModule::presented(&z12, 2, &[vec![6, 0], vec![0, 4]])?;
    let n = rank2.submodule_closure(&[rank2.from_coords(&[3, 0])?]);
    println!("Z/12² / <(6,0),(0,4)> over {n}: {}", factorize(&rank2, &n)?);
    Ok(())
}
