// Superconnectedness: closures of finitely many nonempty opens always meet.

use golomb::progression::Progression;
use golomb::topology::{f0_base_element, superconnected_witness, BasicOpen};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let pieces = [Progression::nonneg(0, 3)?, Progression::nonneg(1, 3)?];
    let opens = [BasicOpen::new(1, 4)?, BasicOpen::new(2, 5)?, BasicOpen::new(3, 7)?];
    let w = superconnected_witness(&pieces, &opens, 10_000_000)?;
    println!("common point {} via primes {:?}", w.point, w.primes);

    let q = f0_base_element(&opens, 100_000)?;
    println!("{q}N lies in every closure");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("superconnected example");
}
