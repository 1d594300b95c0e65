//! A cover that is one element too small is refuted by a grid point.
//!
//! ```bash
//! cargo run --example nullstellensatz_audit
//! ```

use cnslab::constructions::Theorem;
use cnslab::theorem::hypothesis_audit;
use cnslab::{FpSet, Limits, Prime};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let limits = Limits::default();
    let p = Prime::new(13)?;
    let a = FpSet::from_ints(p, [1, 3, -4, 5]);
    let audit = hypothesis_audit(Theorem::Main, std::slice::from_ref(&a), 1, None, &limits)?;
    let r = &audit.report;
    println!("A = {:?}, Σ^1(A) = {:?}", a.residues(), audit.target.residues());
    println!("cover C = {:?}", audit.cover.residues());
    println!(
        "certificate {} (degree ok: {}), {} of {} grid points survive",
        r.coefficient.value(),
        r.degree_ok,
        r.nonzero_points,
        r.grid_points
    );
    println!(
        "witness {:?} gives subsum {:?} outside C: {:?}",
        r.witness.as_ref().map(|w| w.iter().map(|x| x.value()).collect::<Vec<_>>()),
        r.escaping_value.map(|x| x.value()),
        r.verdict
    );

    let p = Prime::new(11)?;
    let sets = [FpSet::from_ints(p, [0, 1, 5]), FpSet::from_ints(p, [2, 3])];
    let audit = hypothesis_audit(Theorem::Cd, &sets, 0, None, &limits)?;
    println!("CD: A + B = {:?}, verdict {:?}", audit.target.residues(), audit.report.verdict);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
