// Neighborhood filters: separating closures and recovering prime divisors.

use golomb::topology::{filter_witness_for_prime, pi_via_filter, special1_refutation, special1_witness};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let w = special1_witness(3, 5, 2, None)?;
    println!(
        "cl({}+{}N0) ∩ cl({}+{}N0) = 2N on [1, {}]",
        w.ux.a, w.ux.b, w.uy.a, w.uy.b, w.window
    );
    // q = 3 divides x = 6, so no neighborhoods of 6 and 5 squeeze their closures into 3N.
    let z = special1_refutation(6, 5, 3, 5, 7)?;
    println!("cl(6+5N0) ∩ cl(5+7N0) contains {z}, not a multiple of 3");

    let f = filter_witness_for_prime(12, 5)?;
    println!("5N belongs to the filter of 12: {f:?}");
    println!("prime divisors of 360 via filters: {:?}", pi_via_filter(360, 100)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("filters example");
}
