//! The double-bound estimate for `Σ_α^β` and its exceptions.
//!
//! For asymmetric `A` the natural guess is
//! `|Σ_α^β(A)| >= min(p, T(|A|) - T(α) - T(β) + 1)` with `T(n) = n(n+1)/2`.
//! The family `{1, -2, 3, ..., k}` at `p = T(k) - 4` falls one short at
//! `(α, β) = (1, 1)` and `(2, 1)`; this module reproduces that and searches
//! for further violations.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::triangular_gap;
use crate::error::{Error, Result};
use crate::field::{is_prime, Prime};
use crate::limits::Limits;
use crate::subsums::{is_asymmetric, FpSet, SubsumTable};
use crate::sweep::{asymmetric_count, decode_asymmetric, map_chunks, subsum_rows, MASK_MAX_P};
use crate::theorem::Check;

fn tri(n: usize) -> usize {
    n * (n + 1) / 2
}

/// `min(p, T(d) - T(α) - T(β) + 1)`
pub fn conj_bound(d: usize, alpha: usize, beta: usize, p: Prime) -> Result<usize> {
    if alpha + beta > d {
        return Err(Error::BadBounds(format!("alpha = {alpha}, beta = {beta}, |A| = {d}")));
    }
    Ok((tri(d) - tri(alpha) - tri(beta) + 1).min(p.size()))
}

/// `{1, -2, 3, 4, ..., k}` reduced mod `p`.
pub fn family_set(k: u64, p: Prime) -> Result<FpSet> {
    if k < 3 {
        return Err(Error::BadParams(format!("k = {k} < 3")));
    }
    let elems: Vec<i64> = (1..=k as i64).map(|i| if i == 2 { -2 } else { i }).collect();
    let set = FpSet::from_ints(p, elems.iter().copied());
    if set.len() != elems.len() {
        return Err(Error::BadParams(format!("elements of the family collide mod {p}")));
    }
    if !is_asymmetric(&set) {
        return Err(Error::NotAsymmetric);
    }
    Ok(set)
}

/// All `(k, p)` with `k >= 3`, `p = T(k) - 4` prime, `p > k` and `p < limit`.
///
/// `p > k` drops `(3, 2)`, where the family does not fit in `F_p`.
pub fn special_pairs(limit: u64) -> Vec<(u64, u64)> {
    (3u64..)
        .map(|k| (k, k * (k + 1) / 2 - 4))
        .take_while(|&(_, p)| p < limit)
        .filter(|&(k, p)| p > k && is_prime(p))
        .collect()
}

pub fn check_double(a: &FpSet, alpha: usize, beta: usize) -> Result<Check> {
    if !is_asymmetric(a) {
        return Err(Error::NotAsymmetric);
    }
    let bound = conj_bound(a.len(), alpha, beta, a.prime())?;
    let observed = SubsumTable::new(a).sigma_double(alpha, beta)?.len();
    Ok(Check {
        holds: observed >= bound,
        observed,
        bound,
    })
}

/// The `λ` with `A = λ·{1, -2, 3, ..., k}`, if `|A| = k`, `p = T(k) - 4`
/// and one exists.
pub fn family_dilation(a: &FpSet) -> Option<u64> {
    let p = a.prime();
    let k = a.len() as u64;
    if k < 3 || k * (k + 1) / 2 != p.get() + 4 {
        return None;
    }
    let family = family_set(k, p).ok()?;
    (1..p.get()).find(|&l| family.dilated(p.elem_u64(l)) == *a)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureHit {
    pub p: Prime,
    pub set: FpSet,
    pub alpha: usize,
    pub beta: usize,
    pub observed: usize,
    pub conjectured_bound: usize,
    pub matches_known_family: bool,
}

impl ConjectureHit {
    fn key(&self) -> (Vec<u64>, usize, usize) {
        (self.set.residues(), self.alpha, self.beta)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum SearchMode {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub p: Prime,
    pub mode: SearchMode,
    pub sets_checked: u64,
    /// `(A, α, β)` triples checked.
    pub instances_checked: u64,
    /// Violations sorted by `(A, α, β)`, `A` compared as its sorted residues.
    pub hits: Vec<ConjectureHit>,
}

impl SearchReport {
    /// Hits outside the known family or outside `(1,1), (1,2), (2,1)`.
    pub fn unexplained(&self) -> impl Iterator<Item = &ConjectureHit> {
        self.hits.iter().filter(|h| {
            !h.matches_known_family || !matches!((h.alpha, h.beta), (1, 1) | (1, 2) | (2, 1))
        })
    }
}

/// `sum_k C(q,k) 2^k (k+1)(k+2)/2`: asymmetric sets times `(α, β)` pairs.
pub fn search_space(p: Prime) -> u128 {
    let q = (p.get().saturating_sub(1) / 2) as u128;
    let mut binom = 1u128;
    let mut total = 0u128;
    for k in 0..=q {
        let term = binom
            .saturating_mul(1u128.checked_shl(k as u32).unwrap_or(u128::MAX))
            .saturating_mul((k + 1) * (k + 2) / 2);
        total = total.saturating_add(term);
        binom = binom.saturating_mul(q - k) / (k + 1);
    }
    total
}

/// Every `(α, β)` violation for one set given its subsum rows.
fn scan_rows(p: Prime, set: &FpSet, rows: &[u64], hits: &mut Vec<ConjectureHit>) -> u64 {
    let d = rows.len() - 1;
    let mut checked = 0;
    for alpha in 0..=d {
        let mut acc = 0u64;
        for (hi, row) in rows.iter().enumerate().skip(alpha) {
            acc |= row;
            let beta = d - hi;
            let bound = conj_bound(d, alpha, beta, p).expect("alpha + beta <= d");
            let observed = acc.count_ones() as usize;
            checked += 1;
            if observed < bound {
                hits.push(ConjectureHit {
                    p,
                    set: set.clone(),
                    alpha,
                    beta,
                    observed,
                    conjectured_bound: bound,
                    matches_known_family: false,
                });
            }
        }
    }
    checked
}

fn scan_set(set: &FpSet, hits: &mut Vec<ConjectureHit>) -> u64 {
    let p = set.prime();
    let table = SubsumTable::new(set);
    let d = table.size();
    let mut checked = 0;
    for alpha in 0..=d {
        let mut acc = FpSet::empty(p);
        for hi in alpha..=d {
            acc.union_with(&table.rows()[hi]);
            let beta = d - hi;
            let bound = conj_bound(d, alpha, beta, p).expect("alpha + beta <= d");
            checked += 1;
            if acc.len() < bound {
                hits.push(ConjectureHit {
                    p,
                    set: set.clone(),
                    alpha,
                    beta,
                    observed: acc.len(),
                    conjectured_bound: bound,
                    matches_known_family: false,
                });
            }
        }
    }
    checked
}

/// Looks for `(A, α, β)` with `A` asymmetric and `|Σ_α^β(A)|` below
/// [`conj_bound`]. Each hit is labelled with whether `A` is a dilation of
/// the known family.
pub fn search(p: Prime, mode: SearchMode, limits: &Limits) -> Result<SearchReport> {
    let mut report = SearchReport {
        p,
        mode,
        sets_checked: 0,
        instances_checked: 0,
        hits: Vec::new(),
    };
    if !p.is_odd() {
        return Err(Error::BadField);
    }
    let parts: Vec<(u64, u64, Vec<ConjectureHit>)> = match mode {
        SearchMode::Exhaustive => {
            let size = search_space(p);
            if size > limits.max_instances as u128 || p.get() > MASK_MAX_P {
                return Err(Error::SpaceTooLarge {
                    size,
                    limit: limits.max_instances,
                });
            }
            let pw = p.get() as u32;
            map_chunks(asymmetric_count(p.get()) as u64, 64, |lo, hi| {
                let mut rows = [0u64; 64];
                let mut hits = Vec::new();
                let mut checked = 0;
                for code in lo..hi {
                    let mask = decode_asymmetric(code, pw);
                    let d = subsum_rows(mask, pw, &mut rows);
                    checked += scan_rows(p, &FpSet::from_mask(p, mask), &rows[..=d], &mut hits);
                }
                (hi - lo, checked, hits)
            })
        }
        SearchMode::Sampled { samples, seed } => {
            let q = (p.size() - 1) / 2;
            let cap = ((2.0 * p.get() as f64).sqrt().ceil() as usize + 2).min(q);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let sets: Vec<FpSet> = (0..samples)
                .map(|_| {
                    let d = rng.gen_range(1..=cap);
                    let picks = sample(&mut rng, q, d).into_vec();
                    let elems: Vec<_> = picks
                        .into_iter()
                        .map(|j| {
                            let x = p.elem_u64(j as u64 + 1);
                            if rng.gen::<bool>() {
                                x
                            } else {
                                -x
                            }
                        })
                        .collect();
                    FpSet::from_elems(p, elems)
                })
                .collect();
            sets.par_iter()
                .map(|set| {
                    let mut hits = Vec::new();
                    let checked = scan_set(set, &mut hits);
                    (1, checked, hits)
                })
                .collect()
        }
    };
    for (sets, checked, hits) in parts {
        report.sets_checked += sets;
        report.instances_checked += checked;
        report.hits.extend(hits);
    }
    report.hits.sort_by_cached_key(ConjectureHit::key);
    report.hits.dedup();
    for hit in &mut report.hits {
        hit.matches_known_family = family_dilation(&hit.set).is_some();
    }
    Ok(report)
}

/// The double-bound check on `family_set(k, p)` at one `(α, β)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyRow {
    pub alpha: usize,
    pub beta: usize,
    pub observed: usize,
    pub conjectured_bound: usize,
    pub violation: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub k: u64,
    pub p: Prime,
    pub set: FpSet,
    pub special: bool,
    /// Every `(α, β)` with `α + β <= k`, `α` major.
    pub rows: Vec<FamilyRow>,
}

impl FamilyReport {
    pub fn row(&self, alpha: usize, beta: usize) -> Option<&FamilyRow> {
        self.rows.iter().find(|r| r.alpha == alpha && r.beta == beta)
    }
}

pub fn family_report(k: u64, p: Prime) -> Result<FamilyReport> {
    let set = family_set(k, p)?;
    let table = SubsumTable::new(&set);
    let d = table.size();
    let mut rows = Vec::new();
    for alpha in 0..=d {
        for beta in 0..=d - alpha {
            let observed = table.sigma_double(alpha, beta)?.len();
            let conjectured_bound = conj_bound(d, alpha, beta, p)?;
            rows.push(FamilyRow {
                alpha,
                beta,
                observed,
                conjectured_bound,
                violation: observed < conjectured_bound,
            });
        }
    }
    Ok(FamilyReport {
        k,
        p,
        set,
        special: triangular_gap(k, 0) == p.get() + 4,
        rows,
    })
}
