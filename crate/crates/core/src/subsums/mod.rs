//! Sumsets and bounded subsum sets over `F_p`.

mod set;
mod table;

pub use set::FpSet;
pub use table::SubsumTable;

use crate::error::Result;

/// `A + B`
pub fn sumset(a: &FpSet, b: &FpSet) -> Result<FpSet> {
    a.check_context(b)?;
    let mut out = FpSet::empty(a.prime());
    for x in a.iter() {
        out.union_shifted(b, x);
    }
    Ok(out)
}

/// `{a + b : a in A, b in B, a != b}`
pub fn restricted_sumset(a: &FpSet, b: &FpSet) -> Result<FpSet> {
    a.check_context(b)?;
    let mut out = FpSet::empty(a.prime());
    for x in a.iter() {
        let mut shifted = b.shifted(x);
        if b.contains(x) {
            // 2x is only reached through the pair (x, x)
            shifted.remove(x + x);
        }
        out.union_with(&shifted);
    }
    Ok(out)
}

pub fn subsum_table(a: &FpSet) -> SubsumTable {
    SubsumTable::new(a)
}

/// `h^A`, the sums of `h` pairwise distinct elements.
pub fn hfold(a: &FpSet, h: usize) -> Result<FpSet> {
    SubsumTable::new(a).hfold(h)
}

pub fn sigma_lower(a: &FpSet, alpha: usize) -> Result<FpSet> {
    SubsumTable::new(a).sigma_lower(alpha)
}

pub fn sigma_upper(a: &FpSet, alpha: usize) -> Result<FpSet> {
    SubsumTable::new(a).sigma_upper(alpha)
}

pub fn sigma_double(a: &FpSet, alpha: usize, beta: usize) -> Result<FpSet> {
    SubsumTable::new(a).sigma_double(alpha, beta)
}

pub fn sigma_all(a: &FpSet) -> FpSet {
    SubsumTable::new(a).sigma_all()
}

pub fn sigma_star(a: &FpSet) -> FpSet {
    SubsumTable::new(a).sigma_star()
}

/// True iff `A ∩ (-A) = ∅`. Sets containing 0 are never asymmetric.
pub fn is_asymmetric(a: &FpSet) -> bool {
    a.is_disjoint(&a.negated())
}
