use serde::Serialize;

use super::formula::nonzero_points;
use crate::constructions::ProofModel;
use crate::error::Result;
use crate::field::Fp;
use crate::limits::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Degree condition holds and the certificate is nonzero, so no set
    /// of this size can cover the subsums; the scan exhibits a grid point
    /// whose sum escapes the cover.
    Contradiction,
    /// The certificate is zero: nothing can be concluded.
    Consistent,
    /// The target monomial does not have the polynomial's total degree.
    DegreeMismatch,
    /// Nonzero certificate yet the polynomial vanishes on the whole grid.
    /// Impossible for a correct coefficient.
    NullstellensatzViolated,
}

#[derive(Clone, Debug, Serialize)]
pub struct ContradictionReport {
    pub degree_ok: bool,
    pub total_degree: u64,
    pub monomial_degree: u64,
    pub coefficient: Fp,
    pub grid_points: u128,
    pub nonzero_points: u64,
    /// A grid point where the hypothesis polynomial does not vanish.
    pub witness: Option<Vec<Fp>>,
    /// `sum(witness) + shift`, a subsum missing from the cover.
    pub escaping_value: Option<Fp>,
    pub verdict: Verdict,
}

/// Applies the Combinatorial Nullstellensatz to a hypothesis model with
/// certified coefficient `c`.
pub fn cns_audit(model: &ProofModel, c: Fp, limits: &Limits) -> Result<ContradictionReport> {
    let degree_ok = model.total_degree() == model.monomial_degree()
        && model
            .grid()
            .iter()
            .zip(model.monomial())
            .all(|(row, &k)| row.len() as u64 > k as u64);
    let census = nonzero_points(model, limits)?;
    let witness = census.points.first().cloned();
    let escaping_value = witness
        .as_ref()
        .map(|pt| pt.iter().fold(model.shift(), |s, &x| s + x));
    let verdict = if !degree_ok {
        Verdict::DegreeMismatch
    } else if c.is_zero() {
        Verdict::Consistent
    } else if census.count == 0 {
        Verdict::NullstellensatzViolated
    } else {
        Verdict::Contradiction
    };
    Ok(ContradictionReport {
        degree_ok,
        total_degree: model.total_degree(),
        monomial_degree: model.monomial_degree(),
        coefficient: c,
        grid_points: model.grid_size(),
        nonzero_points: census.count,
        witness,
        escaping_value,
        verdict,
    })
}
