// Closures of basic open sets and the brute-force oracle that checks them.

use golomb::topology::{closure, in_closure_oracle, BasicOpen};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let u = BasicOpen::new(2, 15)?;
    let cl = closure(&u);
    println!("closure of 2+15N0: {cl:?}");
    for x in [5, 17, 10, 3, 30] {
        println!(
            "{x}: formula {} oracle {}",
            cl.contains(x),
            in_closure_oracle(x, &u, u.b)?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("closure example");
}
