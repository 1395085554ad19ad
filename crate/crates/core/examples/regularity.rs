// Regularity at primes, failure of regularity, and total disconnection of opens.

use golomb::topology::{disconnection_witness, nonregularity_witness, regular_neighborhood_for_prime};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let r = regular_neighborhood_for_prime(7, 6, None)?;
    println!("primes in cl(7+{}N0) stay in 7+6N0 (n = {})", r.neighborhood.b, r.n);

    let w = nonregularity_witness(1, 2, 3, 1, 1_000_000)?;
    println!("{} lies in cl({}+{}N0) but not in {}+{}N0", w.point, w.w.a, w.w.b, w.v.a, w.v.b);

    let d = disconnection_witness(1, 2, 3, 5)?;
    println!("3 and 5 separated by {} and {}", d.class_x, d.class_y);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("regularity example");
}
