// The set of eighth powers is not closed: 16 is a limit point.

use golomb::special_sets::{closure_point_witness_x8, hensel_lift, sqrt_mod_prime, wang_no_integer_solution, x8_root_with_case, x8n_closure_witness};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    println!("sqrt(2) mod 7 = {:?}", sqrt_mod_prime(2, 7)?);
    for p in [3, 5, 7, 11, 13] {
        let (r, case) = x8_root_with_case(p)?;
        println!("x^8 = 16 mod {p}: x = {r} ({case:?})");
    }
    println!("root mod 3^4: {}", hensel_lift(3, 4)?);
    for b in [3, 9, 15, 105] {
        println!("{}", closure_point_witness_x8(b)?.check);
    }
    let wang = wang_no_integer_solution();
    println!("{}^8 < 16 < {}^8", wang.bracket.0, wang.bracket.1);
    let w = x8n_closure_witness(3, 45)?;
    println!("{}^{} ≡ 16^3 mod 45", w.base, w.exponent);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("wang x8 example");
}
