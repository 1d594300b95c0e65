//! The bounds are attained by arithmetic progressions.
//!
//! ```bash
//! cargo run --example sharpness
//! ```

use cnslab::constructions::Theorem;
use cnslab::theorem::sharpness_sweep;
use cnslab::Prime;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p = Prime::new(1009)?;
    for theorem in [Theorem::Cd, Theorem::Dsh, Theorem::Main] {
        let rows = sharpness_sweep(theorem, p, 20);
        let equal = rows.iter().filter(|r| r.equal).count();
        println!("{:4}: {equal}/{} parameter choices attain the bound", theorem.name(), rows.len());
    }
    // near p the cap takes over
    let rows = sharpness_sweep(Theorem::Main, Prime::new(23)?, 11);
    let capped = rows.iter().filter(|r| r.formula > r.bound).count();
    println!("main at p=23: {capped} rows capped at p, all equal: {}", rows.iter().all(|r| r.equal));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
