//! Driving the command line from code and reading its JSON reports.
//!
//! ```bash
//! cargo run --example cli_reports
//! ```

use cnslab::cli::run_args;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let out = run_args(["cnslab", "coeff", "dsh", "--p", "11", "--d", "3", "--h", "2", "--json"]);
    let doc: serde_json::Value = serde_json::from_str(&out.stdout)?;
    println!("exit {}: methods {}", out.code, doc["results"]["methods"]);

    let out = run_args(["cnslab", "verify", "main", "--p", "11", "--exhaustive", "--csv"]);
    print!("exit {}:\n{}", out.code, out.stdout);

    let out = run_args(["cnslab", "sigma", "--p", "11", "--set", "1,-2,3,4,5", "--alpha", "1", "--beta", "1"]);
    print!("exit {}:\n{}", out.code, out.stdout);

    let out = run_args(["cnslab", "hfold", "--p", "7", "--set", "1,8", "--h", "1"]);
    print!("exit {}: {}", out.code, out.stderr);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
