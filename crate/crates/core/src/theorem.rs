//! Mechanical verification of the three lower bounds.
//!
//! Small primes are checked exhaustively on `u64` masks; large primes by
//! seeded random sampling on [`FpSet`]s. Sharpness sweeps compare the
//! extremal progressions against the bounds exactly, and
//! [`construction_audit`] runs every certificate method on a witness model.

use std::collections::BTreeMap;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::closed::{cd_closed, dsh_closed, main_closed};
use crate::coeff::{
    cns_audit, coeff_full_sum, coeff_single_point, expansion_coefficient, nonzero_points, CoefficientReport,
    ContradictionReport, Method, Uniqueness,
};
use crate::constructions::{
    cd_hypothesis, cd_model, dsh_hypothesis, dsh_model, hypothesis_cover_size, main_hypothesis, main_model,
    triangular_gap, ModelParams, ProofModel, Theorem,
};
use crate::error::{Error, Result};
use crate::field::Prime;
use crate::limits::Limits;
use crate::subsums::{is_asymmetric, sumset, FpSet, SubsumTable};
use crate::sweep::{
    asymmetric_count, decode_asymmetric, full_mask, map_chunks, subsum_rows, sumset_mask, MASK_MAX_P,
};

/// Violations kept verbatim in a report; the rest are only counted.
pub const KEPT_VIOLATIONS: usize = 64;

pub fn cd_bound(a: usize, b: usize, p: Prime) -> usize {
    (a + b).saturating_sub(1).min(p.size())
}

pub fn dsh_bound(d: usize, h: usize, p: Prime) -> usize {
    (h * (d - h) + 1).min(p.size())
}

pub fn main_bound(d: usize, alpha: usize, p: Prime) -> usize {
    (triangular_gap(d as u64, alpha as u64) as usize + 1).min(p.size())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub holds: bool,
    pub observed: usize,
    pub bound: usize,
}

impl Check {
    fn new(observed: usize, bound: usize) -> Self {
        Check {
            holds: observed >= bound,
            observed,
            bound,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MainCheck {
    pub holds: bool,
    pub observed_lower: usize,
    pub observed_upper: usize,
    pub bound: usize,
}

pub fn check_cd(a: &FpSet, b: &FpSet) -> Result<Check> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyInput);
    }
    let observed = sumset(a, b)?.len();
    Ok(Check::new(observed, cd_bound(a.len(), b.len(), a.prime())))
}

pub fn check_dsh(a: &FpSet, h: usize) -> Result<Check> {
    let observed = SubsumTable::new(a).hfold(h)?.len();
    Ok(Check::new(observed, dsh_bound(a.len(), h, a.prime())))
}

/// `Σ^α(A)` is obtained from `Σ_α(A)` through the complement bijection
/// `x -> sum(A) - x`; debug builds also build it directly.
pub fn check_main(a: &FpSet, alpha: usize) -> Result<MainCheck> {
    if !is_asymmetric(a) {
        return Err(Error::NotAsymmetric);
    }
    let table = SubsumTable::new(a);
    let lower = table.sigma_lower(alpha)?;
    let upper = lower.reflected(table.total());
    debug_assert_eq!(upper, table.sigma_upper(alpha)?);
    let bound = main_bound(a.len(), alpha, a.prime());
    Ok(MainCheck {
        holds: lower.len() >= bound && upper.len() == lower.len(),
        observed_lower: lower.len(),
        observed_upper: upper.len(),
        bound,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub sets: Vec<FpSet>,
    pub params: BTreeMap<&'static str, usize>,
    pub observed: usize,
    pub bound: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub observed_upper: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Random { samples: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub theorem: Theorem,
    pub p: Prime,
    pub mode: Mode,
    /// Sets (or pairs of sets for CD) enumerated or sampled.
    pub sets_checked: u64,
    /// `(instance, parameter)` pairs checked.
    pub instances_checked: u64,
    /// Instances meeting the bound with equality.
    pub tight: u64,
    pub violation_count: u64,
    /// The first [`KEPT_VIOLATIONS`] violations in enumeration order.
    pub violations: Vec<Violation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampling: Option<String>,
}

impl TheoremReport {
    fn empty(theorem: Theorem, p: Prime, mode: Mode) -> Self {
        TheoremReport {
            theorem,
            p,
            mode,
            sets_checked: 0,
            instances_checked: 0,
            tight: 0,
            violation_count: 0,
            violations: Vec::new(),
            sampling: None,
        }
    }

    pub fn holds(&self) -> bool {
        self.violation_count == 0
    }

    fn absorb(&mut self, part: Tally) {
        self.sets_checked += part.sets;
        self.instances_checked += part.instances;
        self.tight += part.tight;
        self.violation_count += part.violation_count;
        let room = KEPT_VIOLATIONS.saturating_sub(self.violations.len());
        self.violations.extend(part.violations.into_iter().take(room));
    }
}

/// Counters of one chunk of work.
#[derive(Default)]
struct Tally {
    sets: u64,
    instances: u64,
    tight: u64,
    violation_count: u64,
    violations: Vec<Violation>,
}

impl Tally {
    fn record(&mut self, observed: usize, bound: usize, violation: impl FnOnce() -> Violation) {
        self.instances += 1;
        if observed == bound {
            self.tight += 1;
        }
        if observed < bound {
            self.violation_count += 1;
            if self.violations.len() < KEPT_VIOLATIONS {
                self.violations.push(violation());
            }
        }
    }

    fn record_main(&mut self, a: &FpSet, alpha: usize, check: MainCheck) {
        let bound = if check.observed_upper == check.observed_lower {
            check.bound
        } else {
            // unequal cardinalities are a violation whatever the bound
            usize::MAX
        };
        self.record(check.observed_lower, bound, || Violation {
            sets: vec![a.clone()],
            params: BTreeMap::from([("alpha", alpha)]),
            observed: check.observed_lower,
            bound: check.bound,
            observed_upper: Some(check.observed_upper),
        });
    }
}

/// Number of `(instance, parameter)` pairs in the exhaustive space.
pub fn exhaustive_space(theorem: Theorem, p: Prime) -> u128 {
    let pow2 = |e: u64| 1u128.checked_shl(e as u32).filter(|_| e < 127).unwrap_or(u128::MAX);
    let n = p.get();
    match theorem {
        Theorem::Cd => (pow2(n) - 1).saturating_mul(pow2(n) - 1),
        // sum_k C(p,k)(k+1) = 2^p + p 2^(p-1)
        Theorem::Dsh => pow2(n).saturating_add((n as u128).saturating_mul(pow2(n) / 2)),
        // sum_k C(q,k) 2^k (k+1) = 3^q + 2q 3^(q-1)
        Theorem::Main => {
            let q = (n - 1) / 2;
            let c = asymmetric_count(n);
            if q == 0 {
                c
            } else {
                c.saturating_add((2 * q as u128).saturating_mul(c / 3))
            }
        }
    }
}

/// Checks the bound on every instance over `F_p`: all pairs of nonempty
/// sets for CD, every set and every `h` for DSH, every asymmetric set and
/// every `α` for MAIN.
pub fn exhaustive_verify(p: Prime, theorem: Theorem, limits: &Limits) -> Result<TheoremReport> {
    let size = exhaustive_space(theorem, p);
    if size > limits.max_instances as u128 || p.get() > MASK_MAX_P {
        return Err(Error::SpaceTooLarge {
            size,
            limit: limits.max_instances,
        });
    }
    let pw = p.get() as u32;
    let parts = match theorem {
        Theorem::Cd => map_chunks((1u64 << pw) - 1, 16, |lo, hi| cd_chunk(p, lo + 1, hi + 1)),
        Theorem::Dsh => map_chunks(1u64 << pw, 256, |lo, hi| dsh_chunk(p, lo, hi)),
        Theorem::Main => map_chunks(asymmetric_count(p.get()) as u64, 64, |lo, hi| main_chunk(p, lo, hi)),
    };
    let mut report = TheoremReport::empty(theorem, p, Mode::Exhaustive);
    for part in parts {
        report.absorb(part);
    }
    Ok(report)
}

fn cd_chunk(p: Prime, lo: u64, hi: u64) -> Tally {
    let pw = p.get() as u32;
    let mut tally = Tally::default();
    for a in lo..hi {
        let na = a.count_ones() as usize;
        for b in 1..=full_mask(pw) {
            let observed = sumset_mask(a, b, pw).count_ones() as usize;
            let bound = cd_bound(na, b.count_ones() as usize, p);
            tally.record(observed, bound, || Violation {
                sets: vec![FpSet::from_mask(p, a), FpSet::from_mask(p, b)],
                params: BTreeMap::new(),
                observed,
                bound,
                observed_upper: None,
            });
        }
        tally.sets += full_mask(pw);
    }
    tally
}

fn dsh_chunk(p: Prime, lo: u64, hi: u64) -> Tally {
    let pw = p.get() as u32;
    let mut rows = [0u64; 64];
    let mut tally = Tally::default();
    for a in lo..hi {
        let d = subsum_rows(a, pw, &mut rows);
        for (h, row) in rows.iter().enumerate().take(d + 1) {
            let observed = row.count_ones() as usize;
            let bound = dsh_bound(d, h, p);
            tally.record(observed, bound, || Violation {
                sets: vec![FpSet::from_mask(p, a)],
                params: BTreeMap::from([("h", h)]),
                observed,
                bound,
                observed_upper: None,
            });
        }
        tally.sets += 1;
    }
    tally
}

fn main_chunk(p: Prime, lo: u64, hi: u64) -> Tally {
    let pw = p.get() as u32;
    let mut rows = [0u64; 64];
    let mut tally = Tally::default();
    for code in lo..hi {
        let a = decode_asymmetric(code, pw);
        let d = subsum_rows(a, pw, &mut rows);
        // lower[α] = rows α..=d, upper[α] = rows 0..=d-α
        let mut lower = [0u64; 64];
        let mut upper = [0u64; 64];
        let (mut acc_lo, mut acc_up) = (0, 0);
        for k in (0..=d).rev() {
            acc_lo |= rows[k];
            lower[k] = acc_lo;
        }
        for k in 0..=d {
            acc_up |= rows[k];
            upper[d - k] = acc_up;
        }
        let set = FpSet::from_mask(p, a);
        for alpha in 0..=d {
            let check = MainCheck {
                holds: true,
                observed_lower: lower[alpha].count_ones() as usize,
                observed_upper: upper[alpha].count_ones() as usize,
                bound: main_bound(d, alpha, p),
            };
            tally.record_main(&set, alpha, check);
        }
        tally.sets += 1;
    }
    tally
}

enum Sample {
    Pair(FpSet, FpSet),
    Single(FpSet),
}

fn random_subset(rng: &mut ChaCha8Rng, p: Prime, size: usize) -> FpSet {
    FpSet::from_elems(p, sample(rng, p.size(), size).into_iter().map(|r| p.elem_u64(r as u64)))
}

/// Largest sampled size for DSH and MAIN: just past the point where the
/// bound reaches `p`.
fn sample_cap(theorem: Theorem, p: Prime) -> usize {
    let root = (p.get() as f64).sqrt().ceil() as usize;
    match theorem {
        Theorem::Cd => p.size(),
        Theorem::Dsh => (2 * root + 2).min(p.size()),
        Theorem::Main => {
            let root2 = ((2 * p.get()) as f64).sqrt().ceil() as usize;
            (root2 + 2).min((p.size() - 1) / 2)
        }
    }
}

fn sampling_note(theorem: Theorem, p: Prime) -> String {
    let cap = sample_cap(theorem, p);
    match theorem {
        Theorem::Cd => format!("|A|, |B| uniform in [1, {cap}], then uniform subsets of that size"),
        Theorem::Dsh => format!("|A| uniform in [1, {cap}], then a uniform subset; every h in [0, |A|]"),
        Theorem::Main => format!(
            "|A| uniform in [1, {cap}], then uniform distinct magnitudes with uniform signs; every alpha in [0, |A|]"
        ),
    }
}

/// Checks `samples` random instances drawn from a ChaCha8 stream seeded
/// with `seed`. Instances are drawn sequentially and checked in parallel.
pub fn random_verify(p: Prime, theorem: Theorem, samples: u64, seed: u64) -> TheoremReport {
    let mut report = TheoremReport::empty(theorem, p, Mode::Random { samples, seed });
    report.sampling = Some(sampling_note(theorem, p));
    let cap = sample_cap(theorem, p);
    if samples == 0 || (theorem == Theorem::Main && cap == 0) {
        return report;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let instances: Vec<Sample> = (0..samples)
        .map(|_| match theorem {
            Theorem::Cd => {
                let (na, nb) = (rng.gen_range(1..=cap), rng.gen_range(1..=cap));
                let a = random_subset(&mut rng, p, na);
                Sample::Pair(a, random_subset(&mut rng, p, nb))
            }
            Theorem::Dsh => {
                let d = rng.gen_range(1..=cap);
                Sample::Single(random_subset(&mut rng, p, d))
            }
            Theorem::Main => {
                let d = rng.gen_range(1..=cap);
                let q = (p.size() - 1) / 2;
                let picks = sample(&mut rng, q, d).into_vec();
                let elems = picks.into_iter().map(|j| {
                    let x = p.elem_u64(j as u64 + 1);
                    if rng.gen::<bool>() {
                        x
                    } else {
                        -x
                    }
                });
                Sample::Single(FpSet::from_elems(p, elems.collect::<Vec<_>>()))
            }
        })
        .collect();
    let parts: Vec<Tally> = instances
        .par_iter()
        .map(|inst| {
            let mut tally = Tally {
                sets: 1,
                ..Tally::default()
            };
            match (theorem, inst) {
                (Theorem::Cd, Sample::Pair(a, b)) => {
                    let c = check_cd(a, b).expect("sampled sets are nonempty");
                    tally.record(c.observed, c.bound, || Violation {
                        sets: vec![a.clone(), b.clone()],
                        params: BTreeMap::new(),
                        observed: c.observed,
                        bound: c.bound,
                        observed_upper: None,
                    });
                }
                (Theorem::Dsh, Sample::Single(a)) => {
                    let table = SubsumTable::new(a);
                    for (h, row) in table.rows().iter().enumerate() {
                        let (observed, bound) = (row.len(), dsh_bound(a.len(), h, p));
                        tally.record(observed, bound, || Violation {
                            sets: vec![a.clone()],
                            params: BTreeMap::from([("h", h)]),
                            observed,
                            bound,
                            observed_upper: None,
                        });
                    }
                }
                (Theorem::Main, Sample::Single(a)) => {
                    let table = SubsumTable::new(a);
                    let total = table.total();
                    let d = table.size();
                    for alpha in 0..=d {
                        let lower = table.union_of_rows(alpha, d);
                        let upper = lower.reflected(total);
                        debug_assert_eq!(upper, table.union_of_rows(0, d - alpha));
                        let check = MainCheck {
                            holds: true,
                            observed_lower: lower.len(),
                            observed_upper: upper.len(),
                            bound: main_bound(d, alpha, p),
                        };
                        tally.record_main(a, alpha, check);
                    }
                }
                _ => unreachable!("sample shape follows the theorem"),
            }
            tally
        })
        .collect();
    for part in parts {
        report.absorb(part);
    }
    report
}

/// One row of a sharpness sweep on the extremal progressions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SharpnessRow {
    pub params: BTreeMap<&'static str, usize>,
    pub observed: usize,
    /// The bound formula before capping at `p`.
    pub formula: usize,
    pub bound: usize,
    pub equal: bool,
}

/// Compares the progressions `[1,n] + [1,m]`, `h^[1,d]` and `Σ^α([1,d])`
/// with their bounds for every parameter up to `max_d` (MAIN also needs
/// `d <= (p-1)/2`).
pub fn sharpness_sweep(theorem: Theorem, p: Prime, max_d: usize) -> Vec<SharpnessRow> {
    let interval = |d: usize| FpSet::interval(p, 1, d as i64);
    let row = |params: BTreeMap<&'static str, usize>, observed: usize, formula: usize| {
        let bound = formula.min(p.size());
        SharpnessRow {
            params,
            observed,
            formula,
            bound,
            equal: observed == bound,
        }
    };
    let mut rows = Vec::new();
    match theorem {
        Theorem::Cd => {
            for n in 1..=max_d.min(p.size()) {
                for m in 1..=max_d.min(p.size()) {
                    let observed = sumset(&interval(n), &interval(m)).expect("same field").len();
                    rows.push(row(BTreeMap::from([("n", n), ("m", m)]), observed, n + m - 1));
                }
            }
        }
        Theorem::Dsh => {
            for d in 1..=max_d.min(p.size() - 1) {
                let table = SubsumTable::new(&interval(d));
                for h in 0..=d {
                    rows.push(row(BTreeMap::from([("d", d), ("h", h)]), table.rows()[h].len(), h * (d - h) + 1));
                }
            }
        }
        Theorem::Main => {
            for d in 1..=max_d.min((p.size() - 1) / 2) {
                let table = SubsumTable::new(&interval(d));
                for alpha in 0..=d {
                    let observed = table.union_of_rows(0, d - alpha).len();
                    let formula = triangular_gap(d as u64, alpha as u64) as usize + 1;
                    rows.push(row(BTreeMap::from([("d", d), ("alpha", alpha)]), observed, formula));
                }
            }
        }
    }
    rows
}

pub fn witness_model(params: ModelParams, p: Prime) -> Result<ProofModel> {
    match params {
        ModelParams::Cd { n, m } => cd_model(n, m, p),
        ModelParams::Dsh { d, h } => dsh_model(d, h, p),
        ModelParams::Main { d, alpha } => main_model(d, alpha, p),
    }
}

/// Builds the witness model for `params` and evaluates its certificate by
/// each requested method, plus the non-vanishing census when the grid is
/// within `limits`.
///
/// Methods that hit a size guard land in `skipped`; a closed form with `p`
/// in its denominator lands there too, with a warning.
pub fn construction_audit(
    params: ModelParams,
    p: Prime,
    methods: &[Method],
    limits: &Limits,
) -> Result<CoefficientReport> {
    let model = witness_model(params, p)?;
    let delta = model.delta();
    let mut report = CoefficientReport::new(params.theorem(), params, p, delta, model.monomial().to_vec());
    let census_fits = model.grid_size() <= limits.max_grid as u128;
    for &method in methods {
        let outcome = match method {
            Method::FullSum => coeff_full_sum(&model, limits),
            // the census below re-checks uniqueness when it runs
            Method::SinglePoint => coeff_single_point(&model, Uniqueness::Trust, limits),
            Method::ClosedForm => {
                let closed = match params {
                    ModelParams::Cd { n, m } => cd_closed(n, m, delta, p)?,
                    ModelParams::Dsh { d, h } => dsh_closed(d, h, delta, p)?,
                    ModelParams::Main { d, alpha } => main_closed(d, alpha, delta, p)?,
                };
                report.closed_form_exact = Some(closed.exact.clone());
                closed.residue()
            }
            Method::Expansion => expansion_coefficient(&model, limits),
        };
        match outcome {
            Ok(v) => {
                report.methods.insert(method, v);
            }
            Err(e @ (Error::GridTooLarge { .. } | Error::TooLarge(_))) => {
                report.skipped.insert(method, e.to_string());
            }
            Err(e @ Error::NotPIntegral { .. }) => {
                report.warnings.push(format!("closed form: {e}"));
                report.skipped.insert(method, e.to_string());
            }
            Err(e) => return Err(e),
        }
    }
    if census_fits {
        report.nonzero_point_count = Some(nonzero_points(&model, limits)?.count);
    } else {
        report
            .warnings
            .push(format!("census skipped: {} grid points", model.grid_size()));
    }
    report.settle();
    Ok(report)
}

/// A hypothesis model run through the Nullstellensatz audit.
#[derive(Clone, Debug, Serialize)]
pub struct HypothesisAudit {
    pub params: ModelParams,
    pub p: Prime,
    pub sets: Vec<FpSet>,
    /// The set the theorem bounds: `A + B`, `h^A` or `Σ^α(A)`.
    pub target: FpSet,
    pub cover: FpSet,
    pub report: ContradictionReport,
}

/// Builds the hypothesis model of `theorem` on `sets` (two for CD, one
/// otherwise) with `param` as `h` or `α`, computes its certificate by the
/// full sum and applies the Nullstellensatz audit.
///
/// Without an explicit `cover`, the smallest residues of the target set
/// are taken, as many as the model needs.
pub fn hypothesis_audit(
    theorem: Theorem,
    sets: &[FpSet],
    param: usize,
    cover: Option<FpSet>,
    limits: &Limits,
) -> Result<HypothesisAudit> {
    let a = sets.first().ok_or(Error::EmptyInput)?;
    let p = a.prime();
    let (params, target) = match theorem {
        Theorem::Cd => {
            let b = sets.get(1).ok_or(Error::EmptyInput)?;
            let params = ModelParams::Cd {
                n: a.len() as u64,
                m: b.len() as u64,
            };
            (params, sumset(a, b)?)
        }
        Theorem::Dsh => {
            let params = ModelParams::Dsh {
                d: a.len() as u64,
                h: param as u64,
            };
            (params, SubsumTable::new(a).hfold(param)?)
        }
        Theorem::Main => {
            let params = ModelParams::Main {
                d: a.len() as u64,
                alpha: param as u64,
            };
            (params, SubsumTable::new(a).sigma_upper(param)?)
        }
    };
    let cover = match cover {
        Some(c) => c,
        None => {
            let needed = hypothesis_cover_size(params, p) as usize;
            FpSet::from_elems(p, target.iter().take(needed).collect::<Vec<_>>())
        }
    };
    let model = match theorem {
        Theorem::Cd => cd_hypothesis(a, &sets[1], &cover)?,
        Theorem::Dsh => dsh_hypothesis(a, param as u64, &cover)?,
        Theorem::Main => main_hypothesis(a, param as u64, &cover)?,
    };
    let coefficient = coeff_full_sum(&model, limits)?;
    let report = cns_audit(&model, coefficient, limits)?;
    Ok(HypothesisAudit {
        params,
        p,
        sets: sets.to_vec(),
        target,
        cover,
        report,
    })
}
