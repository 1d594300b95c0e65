//! Certificate coefficients of the witness models by every method.
//!
//! ```bash
//! cargo run --release --example certificates
//! ```

use cnslab::coeff::Method;
use cnslab::constructions::ModelParams;
use cnslab::theorem::construction_audit;
use cnslab::{Limits, Prime};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let limits = Limits::default();
    let cases = [
        (ModelParams::Cd { n: 2, m: 2 }, 7),
        (ModelParams::Cd { n: 5, m: 4 }, 7),
        (ModelParams::Dsh { d: 3, h: 2 }, 11),
        (ModelParams::Dsh { d: 7, h: 3 }, 11),
        (ModelParams::Main { d: 2, alpha: 1 }, 7),
        (ModelParams::Main { d: 5, alpha: 2 }, 11),
    ];
    for (params, p) in cases {
        let report = construction_audit(params, Prime::new(p)?, &Method::ALL, &limits)?;
        let values: Vec<String> = report
            .methods
            .iter()
            .map(|(m, v)| format!("{m:?}={}", v.value()))
            .collect();
        println!(
            "{params:?} p={p} delta={}: {} census={:?} skipped={:?} clean={}",
            report.delta,
            values.join(" "),
            report.nonzero_point_count,
            report.skipped.keys().collect::<Vec<_>>(),
            report.is_clean()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
