//! Certificate coefficients of the proof models.
//!
//! Four independent routes to the coefficient of the target monomial:
//! the full coefficient-formula sum over the grid, its collapse to the
//! single non-vanishing point, dense polynomial expansion, and the exact
//! closed forms in [`crate::closed`].

mod audit;
mod expand;
mod formula;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use audit::{cns_audit, ContradictionReport, Verdict};
pub use expand::{expansion_coefficient, expansion_coefficient_of};
pub use formula::{coeff_full_sum, coeff_single_point, g_prime, nonzero_points, Census, Uniqueness};

use crate::constructions::{ModelParams, Theorem};
use crate::field::{FactoredRational, Fp, Prime};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    FullSum,
    SinglePoint,
    ClosedForm,
    Expansion,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::FullSum,
        Method::SinglePoint,
        Method::ClosedForm,
        Method::Expansion,
    ];
}

/// The certificate coefficient of one witness model, by every method that
/// ran.
#[derive(Clone, Debug, Serialize)]
pub struct CoefficientReport {
    pub theorem: Theorem,
    pub params: ModelParams,
    pub p: Prime,
    pub delta: u64,
    pub monomial: Vec<u32>,
    pub methods: BTreeMap<Method, Fp>,
    /// Methods that were requested but could not run, with the reason.
    pub skipped: BTreeMap<Method, String>,
    pub closed_form_exact: Option<FactoredRational>,
    pub nonzero_point_count: Option<u64>,
    /// All computed methods returned the same residue.
    pub agreement: bool,
    /// Every computed value is nonzero.
    pub nonzero: bool,
    pub warnings: Vec<String>,
}

impl CoefficientReport {
    pub fn new(theorem: Theorem, params: ModelParams, p: Prime, delta: u64, monomial: Vec<u32>) -> Self {
        CoefficientReport {
            theorem,
            params,
            p,
            delta,
            monomial,
            methods: BTreeMap::new(),
            skipped: BTreeMap::new(),
            closed_form_exact: None,
            nonzero_point_count: None,
            agreement: true,
            nonzero: true,
            warnings: Vec::new(),
        }
    }

    /// Recomputes `agreement` and `nonzero` from `methods`.
    pub fn settle(&mut self) {
        let mut values = self.methods.values();
        self.agreement = match values.next() {
            Some(first) => values.all(|v| v == first),
            None => true,
        };
        self.nonzero = self.methods.values().all(|v| !v.is_zero());
    }

    /// The agreed value, if every method agreed and at least one ran.
    pub fn value(&self) -> Option<Fp> {
        if self.agreement {
            self.methods.values().next().copied()
        } else {
            None
        }
    }

    /// True when the census found exactly one non-vanishing point (or was
    /// not run).
    pub fn census_ok(&self) -> bool {
        self.nonzero_point_count.is_none_or(|c| c == 1)
    }

    pub fn is_clean(&self) -> bool {
        self.agreement && self.nonzero && self.census_ok() && !self.methods.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{dsh_hypothesis, main_hypothesis};
    use crate::limits::Limits;
    use crate::subsums::{FpSet, SubsumTable};

    #[test]
    fn audit_dsh_progression() {
        let p = Prime::new(11).unwrap();
        let a = FpSet::interval(p, 1, 5);
        let mut cover = SubsumTable::new(&a).hfold(2).unwrap();
        assert_eq!(cover.len(), 7);
        cover.remove(cover.max().unwrap());
        let model = dsh_hypothesis(&a, 2, &cover).unwrap();
        let c = coeff_full_sum(&model, &Limits::default()).unwrap();
        assert!(!c.is_zero());
        let report = cns_audit(&model, c, &Limits::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Contradiction);
        assert!(!cover.contains(report.escaping_value.unwrap()));
    }

    #[test]
    fn audit_main_progression() {
        let p = Prime::new(13).unwrap();
        let a = FpSet::from_ints(p, [2, 4, 6]);
        let mut cover = SubsumTable::new(&a).sigma_upper(1).unwrap();
        let smallest = cover.iter().next().unwrap();
        cover.remove(smallest);
        let model = main_hypothesis(&a, 1, &cover).unwrap();
        let c = coeff_full_sum(&model, &Limits::default()).unwrap();
        let report = cns_audit(&model, c, &Limits::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Contradiction);
        let escaped = report.escaping_value.unwrap();
        assert!(!cover.contains(escaped));
        assert!(SubsumTable::new(&a).sigma_upper(1).unwrap().contains(escaped));
    }

    #[test]
    fn audit_with_zero_certificate() {
        let p = Prime::new(11).unwrap();
        let a = FpSet::interval(p, 1, 3);
        let model = dsh_hypothesis(&a, 2, &FpSet::from_ints(p, [3, 4])).unwrap();
        let report = cns_audit(&model, p.zero(), &Limits::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Consistent);
    }

    #[test]
    fn report_settles() {
        let p = Prime::new(7).unwrap();
        let mut r = CoefficientReport::new(Theorem::Cd, ModelParams::Cd { n: 2, m: 2 }, p, 0, vec![1, 1]);
        r.methods.insert(Method::FullSum, p.elem(2));
        r.methods.insert(Method::SinglePoint, p.elem(2));
        r.settle();
        assert!(r.agreement && r.nonzero);
        assert_eq!(r.value(), Some(p.elem(2)));
        r.methods.insert(Method::Expansion, p.elem(3));
        r.settle();
        assert!(!r.agreement);
        assert_eq!(r.value(), None);
    }
}
