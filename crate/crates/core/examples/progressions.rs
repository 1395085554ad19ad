// Intersecting arithmetic progressions with the Chinese remainder theorem.

use golomb::progression::{Progression, ProgressionSystem};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let system = ProgressionSystem::new(vec![
        "2+3N0".parse::<Progression>()?,
        "3+5N0".parse()?,
        "2+7Z".parse()?,
    ]);
    println!("consistent: {}", system.crt_consistent()?);
    println!("intersection: {}", system.intersect()?.expect("coprime moduli"));
    println!("least element: {:?}", system.least_element()?);

    let clash = ProgressionSystem::new(vec!["0+4Z".parse()?, "1+6Z".parse()?]);
    println!("0+4Z meets 1+6Z: {}", clash.crt_consistent()?);

    let p = Progression::nonneg(5, 7)?;
    println!("{p} up to 40: {:?}", p.enumerate(40));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("progressions example");
}
