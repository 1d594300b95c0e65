//! Prime-field residues and exact factored rationals.
//!
//! ```bash
//! cargo run --example field_arithmetic
//! ```

use cnslab::{is_prime, FactoredRational, Prime};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p = Prime::new(11)?;
    let x = p.elem(-2);
    println!("-2 mod {p} = {}, inverse {}", x.value(), x.inv()?.value());
    println!("2^10 mod {p} = {}", p.elem(2).pow(10).value());

    let primes: Vec<u64> = (1u64 << 61..(1 << 61) + 200).filter(|&n| is_prime(n)).collect();
    println!("primes just above 2^61: {primes:?}");

    // 10!! = 0! 1! ... 9! has 2-adic valuation far above any single factorial
    let sf = FactoredRational::superfactorial(10);
    println!("10!! = {sf}");
    let c = FactoredRational::binomial(20, 7)?;
    println!("C(20, 7) = {c} = {} = {} mod 13", c.to_i128().unwrap(), c.reduce_mod(Prime::new(13)?)?.value());

    // arguments past p: 13 cancels between numerator and denominator
    let c = FactoredRational::binomial(26, 13)?;
    println!("C(26, 13) = {c} = {} mod 13", c.reduce_mod(Prime::new(13)?)?.value());
    let q = FactoredRational::one().div(&FactoredRational::factorial(13))?;
    println!("1/13! mod 13: {:?}", q.reduce_mod(Prime::new(13)?));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
