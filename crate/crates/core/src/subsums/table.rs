use super::FpSet;
use crate::error::{Error, Result};
use crate::field::{Fp, Prime};

/// The family `k^A` (sums of `k` pairwise distinct elements of `A`) for
/// every `k = 0..=|A|`.
///
/// Built by 0/1-knapsack dynamic programming: each element `a` updates
/// `T_k |= T_{k-1} + a` for `k` from high to low, so no element is used
/// twice. Every bounded-subsum set is a union of consecutive rows.
#[derive(Clone, Debug)]
pub struct SubsumTable {
    source: FpSet,
    rows: Vec<FpSet>,
}

impl SubsumTable {
    pub fn new(source: &FpSet) -> Self {
        let p = source.prime();
        let d = source.len();
        let mut rows = vec![FpSet::empty(p); d + 1];
        rows[0].insert(p.zero());
        for (used, a) in source.iter().enumerate() {
            for k in (1..=used + 1).rev() {
                let (lower, upper) = rows.split_at_mut(k);
                upper[0].union_shifted(&lower[k - 1], a);
            }
        }
        SubsumTable {
            source: source.clone(),
            rows,
        }
    }

    pub fn prime(&self) -> Prime {
        self.source.prime()
    }

    pub fn source(&self) -> &FpSet {
        &self.source
    }

    /// `|A|`
    pub fn size(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn rows(&self) -> &[FpSet] {
        &self.rows
    }

    /// `k^A`, empty for `k > |A|`.
    pub fn row(&self, k: usize) -> FpSet {
        self.rows
            .get(k)
            .cloned()
            .unwrap_or_else(|| FpSet::empty(self.prime()))
    }

    /// Union of rows `lo..=hi`.
    pub fn union_of_rows(&self, lo: usize, hi: usize) -> FpSet {
        let mut out = FpSet::empty(self.prime());
        for row in self.rows.iter().take(hi + 1).skip(lo) {
            out.union_with(row);
        }
        out
    }

    pub fn hfold(&self, h: usize) -> Result<FpSet> {
        if h > self.size() {
            return Err(Error::BadH {
                h,
                size: self.size(),
            });
        }
        Ok(self.rows[h].clone())
    }

    /// Subsums of at least `alpha` distinct elements.
    pub fn sigma_lower(&self, alpha: usize) -> Result<FpSet> {
        self.sigma_double(alpha, 0)
    }

    /// Subsums of at most `|A| - alpha` distinct elements.
    pub fn sigma_upper(&self, alpha: usize) -> Result<FpSet> {
        self.sigma_double(0, alpha)
    }

    /// Subsums of at least `alpha` and at most `|A| - beta` distinct elements.
    pub fn sigma_double(&self, alpha: usize, beta: usize) -> Result<FpSet> {
        let d = self.size();
        if alpha + beta > d {
            return Err(Error::BadBounds(format!(
                "alpha = {alpha}, beta = {beta}, |A| = {d}"
            )));
        }
        Ok(self.union_of_rows(alpha, d - beta))
    }

    pub fn sigma_all(&self) -> FpSet {
        self.union_of_rows(0, self.size())
    }

    /// Non-trivial subsums; empty for an empty source.
    pub fn sigma_star(&self) -> FpSet {
        self.union_of_rows(1, self.size())
    }

    /// Sum of all elements of the source.
    pub fn total(&self) -> Fp {
        self.source.sum()
    }
}
