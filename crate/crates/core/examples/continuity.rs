// Continuity of polynomial self-maps: certificates and discontinuity witnesses.

use golomb::maps::{continuity_certificate, half_square_discontinuity_witness, polynomial_continuity, IntPolynomial};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let square_plus = IntPolynomial::new(vec![0, 1, 1]);
    println!("x + x^2: {:?}", polynomial_continuity(&square_plus, 100)?);
    let cert = continuity_certificate(&square_plus, 3, 7, 10_000)?;
    println!("f(3 + {}N0) ⊆ {} + 7N0, checked {} points", cert.d, cert.fx, cert.checked);

    let shifted = IntPolynomial::new(vec![1, 1]);
    println!("x + 1: {:?}", polynomial_continuity(&shifted, 100)?);

    for b in [3, 9, 15] {
        let w = half_square_discontinuity_witness(b)?;
        println!("b = {b}: x(x+1)/2 sends {} to even {}", w.point, w.image);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("continuity example");
}
