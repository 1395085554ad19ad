// Progressive functions and the tree of their finite restrictions.

use golomb::maps::{enumerate_successors, is_progressive, ProgressiveFunction};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    println!("x ↦ 2x progressive: {:?}", is_progressive(&[2, 4, 6, 8]));
    println!("x ↦ x + 1 progressive: {:?}", is_progressive(&[2, 3, 4]));

    let mut f = ProgressiveFunction::new(vec![1])?;
    for _ in 0..5 {
        let next = enumerate_successors(&f, 3)?;
        println!("{:?} extends by {next:?}", f.values());
        let mut values = f.values().to_vec();
        values.push(next[1]);
        f = ProgressiveFunction::new(values)?;
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("progressive maps example");
}
