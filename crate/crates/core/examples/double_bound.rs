//! The double-bound estimate: special primes, the exceptional family and
//! exhaustive searches.
//!
//! ```bash
//! cargo run --release --example double_bound
//! ```

use cnslab::conjecture::{family_report, search, special_pairs, SearchMode};
use cnslab::{Limits, Prime};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let pairs = special_pairs(1000);
    println!("special pairs below 1000: {pairs:?}");
    for &(k, p) in &pairs[..4] {
        let fam = family_report(k, Prime::new(p)?)?;
        let violations: Vec<_> = fam.rows.iter().filter(|r| r.violation).map(|r| (r.alpha, r.beta)).collect();
        let s11 = fam.row(1, 1).unwrap();
        println!("k={k:2} p={p:3}: |Σ_1^1| = {} < {}; violations at {violations:?}", s11.observed, s11.conjectured_bound);
    }
    for p in [7, 11, 13] {
        let r = search(Prime::new(p)?, SearchMode::Exhaustive, &Limits::default())?;
        println!(
            "p={p}: {} sets, {} hits, {} outside the known family",
            r.sets_checked,
            r.hits.len(),
            r.unexplained().count()
        );
        if let Some(h) = r.unexplained().next() {
            println!("  e.g. A = {:?}, (α, β) = ({}, {}): {} < {}", h.set.residues(), h.alpha, h.beta, h.observed, h.conjectured_bound);
        };
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
