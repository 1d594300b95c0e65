//! Sumsets and bounded subsum sets over F_p.
//!
//! ```bash
//! cargo run --example subsum_sets
//! ```

use cnslab::subsums::{is_asymmetric, restricted_sumset, sumset};
use cnslab::{FpSet, Prime, SubsumTable};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p = Prime::new(11)?;
    let a = FpSet::from_ints(p, [1, 2, 4]);
    let b = FpSet::from_ints(p, [3, 5]);
    println!("A + B = {:?}", sumset(&a, &b)?.residues());
    println!("A +^ A = {:?}", restricted_sumset(&a, &a)?.residues());

    // {1, -2, 3, 4, 5}: asymmetric, and one short of the double bound
    let a = FpSet::from_ints(p, [1, -2, 3, 4, 5]);
    println!("A = {:?}, asymmetric: {}", a.residues(), is_asymmetric(&a));
    let table = SubsumTable::new(&a);
    for (k, row) in table.rows().iter().enumerate() {
        println!("  {k}^A has {:2} elements", row.len());
    }
    println!("|Σ_1(A)| = {}", table.sigma_lower(1)?.len());
    println!("|Σ^1(A)| = {}", table.sigma_upper(1)?.len());
    println!("|Σ_1^1(A)| = {}", table.sigma_double(1, 1)?.len());
    println!("|Σ*(A)| = {}", table.sigma_star().len());

    // large prime, 100 elements
    let p = Prime::new(999_983)?;
    let big = FpSet::from_ints(p, (1..=100).map(|i| i * i * 37 + 5));
    let start = std::time::Instant::now();
    let table = SubsumTable::new(&big);
    println!(
        "p = {p}, |A| = 100: |Σ(A)| = {} in {:?}",
        table.sigma_all().len(),
        start.elapsed()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
