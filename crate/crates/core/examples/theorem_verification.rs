//! Exhaustive and sampled verification of the three lower bounds.
//!
//! ```bash
//! cargo run --release --example theorem_verification
//! ```

use cnslab::constructions::Theorem;
use cnslab::theorem::{exhaustive_verify, random_verify};
use cnslab::{Limits, Prime};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let limits = Limits::default();
    for theorem in [Theorem::Cd, Theorem::Dsh, Theorem::Main] {
        for p in [5, 7, 11] {
            let r = exhaustive_verify(Prime::new(p)?, theorem, &limits)?;
            println!(
                "{:4} p={p:2}: {:8} instances, {:7} tight, {} violations",
                theorem.name(),
                r.instances_checked,
                r.tight,
                r.violation_count
            );
        }
    }
    let r = random_verify(Prime::new(101)?, Theorem::Dsh, 500, 1);
    println!("dsh p=101 random: {} instances, {} violations", r.instances_checked, r.violation_count);
    println!("  sampling: {}", r.sampling.unwrap_or_default());
    let r = random_verify(Prime::new(1009)?, Theorem::Main, 200, 42);
    println!("main p=1009 random: {} instances, {} violations", r.instances_checked, r.violation_count);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
