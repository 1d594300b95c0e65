//! Exact closed forms of the certificates, before and after reduction.
//!
//! ```bash
//! cargo run --example closed_forms
//! ```

use cnslab::closed::{cd_closed, dsh_closed, main_closed};
use cnslab::constructions::{dsh_delta, main_delta};
use cnslab::Prime;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p = Prime::new(11)?;
    println!("cd(4, 3, 0) = {}", cd_closed(4, 3, 0, p)?.exact);
    for h in 1..=4 {
        let r = dsh_closed(5, h, 0, p)?;
        println!("dsh(5, {h}, 0) = {} = {:?} mod {p}", r.exact, r.residue.map(|x| x.value()));
    }
    let delta = dsh_delta(7, 3, p);
    let r = dsh_closed(7, 3, delta, p)?;
    println!("dsh(7, 3, {delta}) = {} = {} mod {p}", r.exact, r.residue()?.value());
    let delta = main_delta(5, 2, p);
    let r = main_closed(5, 2, delta, p)?;
    println!("main(5, 2, {delta}) = {} = {} mod {p}", r.exact, r.residue()?.value());
    // without the wrap correction the formula vanishes mod p
    let r = main_closed(5, 2, 0, p)?;
    println!("main(5, 2, 0) = {} mod {p}: {:?}", r.exact, r.residue.map(|x| x.value()));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
