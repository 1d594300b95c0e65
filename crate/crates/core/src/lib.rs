//! Exact computations around restricted subset sums in prime fields.
//!
//! The crate computes sumsets, `h`-fold restricted sumsets and the
//! bounded subsum sets `Σ_α`, `Σ^α`, `Σ_α^β` with bit-vector dynamic
//! programming, checks the Cauchy-Davenport, Dias da Silva-Hamidoune and
//! bounded-subsum lower bounds, and evaluates the Combinatorial
//! Nullstellensatz certificate coefficients behind their polynomial
//! proofs by several independent routes.
//!
//! See the `examples/` directory of this crate for one runnable program
//! per capability.

pub mod cli;
pub mod closed;
pub mod coeff;
pub mod conjecture;
pub mod constructions;
pub mod error;
pub mod field;
pub mod limits;
pub mod subsums;
mod sweep;
pub mod theorem;

pub use error::{Error, Result};
pub use field::{is_prime, FactoredRational, Fp, Prime};
pub use limits::Limits;
pub use subsums::{FpSet, SubsumTable};
