//! Checks structural properties of prime factorizations over a small
//! family of rings, exhaustively and by seeded sampling.
use gpif::finring::RingSpec;
use gpif::props::{check_property, InstanceFamily, PropertyId};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut family = InstanceFamily::with_rings(vec![RingSpec::Zmod(4), RingSpec::Zmod(6), RingSpec::Zmod(12)]);
    family.module_cap = 16;
    for id in PropertyId::ALL {
        let report = check_property(id, &family)?;
        println!("{}", report.to_text().trim_end());
    }

    let sampled = InstanceFamily::default_family().sampled(50, 42);
    let report = check_property(PropertyId::DsumMax, &sampled)?;
    println!("{}", report.to_json());
    Ok(())
}
