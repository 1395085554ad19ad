// Closed sets {x^2 + nx} and a pairwise disjoint family of closed connected sets.

use golomb::special_sets::{disjoint_family_member, frob_closedness_certificate, verify_family_disjoint};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for a in [2, 3, 5, 6] {
        let c = frob_closedness_certificate(0, a, 10_000, 100_000)?;
        println!("{a}+{}N0 misses the squares", c.p);
    }
    for n in 1..=3 {
        let m = disjoint_family_member(n)?;
        println!("X_{n}: p = {}, preimage {} ∪ {}", m.p, m.preimage[0], m.preimage[1]);
    }
    let r = verify_family_disjoint(1, 3, 1_000_000)?;
    println!("X_1 ∩ X_3 on [1, 10^6]: {:?}", r.common);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("quadratic images example");
}
