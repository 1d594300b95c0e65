//! Shared machinery for the exhaustive searches: `u64` bit masks for
//! `p <= 61` and a deterministic chunked map-reduce.

use rayon::prelude::*;

/// Largest prime handled by the mask fast path.
pub(crate) const MASK_MAX_P: u64 = 61;

/// Translation of a residue mask by `a` modulo `p`.
#[inline]
pub(crate) fn rot(m: u64, a: u32, p: u32, full: u64) -> u64 {
    if a == 0 {
        m
    } else {
        ((m << a) | (m >> (p - a))) & full
    }
}

#[inline]
pub(crate) fn full_mask(p: u32) -> u64 {
    (1u64 << p) - 1
}

#[inline]
pub(crate) fn sumset_mask(a: u64, b: u64, p: u32) -> u64 {
    let full = full_mask(p);
    let mut out = 0;
    let mut rest = a;
    while rest != 0 {
        let x = rest.trailing_zeros();
        rest &= rest - 1;
        out |= rot(b, x, p, full);
    }
    out
}

/// Rows `k^A` for `k = 0..=|A|` written into `rows`; returns `|A|`.
#[inline]
pub(crate) fn subsum_rows(a: u64, p: u32, rows: &mut [u64; 64]) -> usize {
    let full = full_mask(p);
    rows[0] = 1;
    let mut used = 0;
    let mut rest = a;
    while rest != 0 {
        let x = rest.trailing_zeros();
        rest &= rest - 1;
        rows[used + 1] = 0;
        for k in (1..=used + 1).rev() {
            rows[k] |= rot(rows[k - 1], x, p, full);
        }
        used += 1;
    }
    used
}

/// Decodes an asymmetric set from its base-3 encoding: digit `j` says
/// whether magnitude `j + 1` is absent, present as `+(j+1)` or as `-(j+1)`.
#[inline]
pub(crate) fn decode_asymmetric(mut code: u64, p: u32) -> u64 {
    let mut mask = 0;
    for j in 1..=(p - 1) / 2 {
        match code % 3 {
            1 => mask |= 1 << j,
            2 => mask |= 1 << (p - j),
            _ => {}
        }
        code /= 3;
    }
    mask
}

/// `3^((p-1)/2)`, the number of asymmetric subsets of `F_p` for odd `p`.
pub(crate) fn asymmetric_count(p: u64) -> u128 {
    3u128.saturating_pow(((p - 1) / 2) as u32)
}

/// Maps `work` over `[0, n)` in fixed-size chunks; partial results come
/// back in index order, so folding them does not depend on the pool.
pub(crate) fn map_chunks<T, W>(n: u64, chunk: u64, work: W) -> Vec<T>
where
    T: Send,
    W: Fn(u64, u64) -> T + Sync,
{
    (0..n.div_ceil(chunk) as usize)
        .into_par_iter()
        .map(|c| {
            let start = c as u64 * chunk;
            work(start, (start + chunk).min(n))
        })
        .collect()
}
