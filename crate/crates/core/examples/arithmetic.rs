// Number-theoretic primitives: factorization, the dagger operation, primes.

use golomb::arith;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let f = arith::factorize(360)?;
    println!("360 = {:?}", f.pairs());
    println!("radical(360) = {}", f.radical());

    // Largest divisor of x coprime to y.
    println!("12 † 2 = {}", arith::dagger(12, 2));
    println!("90 † 6 = {}", arith::dagger(90, 6));

    println!("primes up to 30: {:?}", arith::primes_up_to(30)?);
    println!("least prime in 3+10N0: {:?}", arith::least_prime_in_progression(3, 10, 1000)?);
    println!("64 as a perfect power: {:?}", arith::is_perfect_power(64));
    println!("inverse of 3 mod 7: {:?}", arith::mod_inverse(3, 7));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("arithmetic example");
}
