// Screening candidate self-homeomorphisms with necessary conditions.

use golomb::homeo::{brunault_primes, run_all_checks, BijectionWindow};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let candidates = [
        ("identity", BijectionWindow::identity(200)),
        ("swap 2 and 3", BijectionWindow::transposition(200, 2, 3)?),
        ("multiplicative swap", BijectionWindow::multiplicative_swap(200, 2, 3)?),
    ];
    for (name, h) in &candidates {
        let r = run_all_checks(h);
        let statuses: Vec<_> = r.items().iter().map(|v| (v.item.clone(), v.status)).collect();
        println!("{name}: {statuses:?}");
    }
    println!("{}", golomb::homeo::NECESSARY_ONLY);
    println!("primes for a = 2, b = 3: {:?}", brunault_primes(2, 3, 5, 10_000)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("homeomorphisms example");
}
