use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{Fp, Prime};

const WORD: usize = 64;

/// Reads `n <= 64` bits starting at bit `pos`.
#[inline]
fn read_bits(words: &[u64], pos: usize, n: usize) -> u64 {
    let (w, b) = (pos / WORD, pos % WORD);
    let mut v = words[w] >> b;
    if b > 0 && w + 1 < words.len() {
        v |= words[w + 1] << (WORD - b);
    }
    if n < WORD {
        v &= (1u64 << n) - 1;
    }
    v
}

/// ORs the low `n <= 64` bits of `v` into `words` at bit `pos`.
#[inline]
fn or_bits(words: &mut [u64], pos: usize, n: usize, v: u64) {
    let (w, b) = (pos / WORD, pos % WORD);
    words[w] |= v << b;
    if b > 0 && b + n > WORD {
        words[w + 1] |= v >> (WORD - b);
    }
}

/// `dst[dst_off..dst_off+len] |= src[src_off..src_off+len]`
fn or_range(dst: &mut [u64], src: &[u64], src_off: usize, dst_off: usize, len: usize) {
    let mut i = 0;
    while i < len {
        let n = WORD.min(len - i);
        let v = read_bits(src, src_off + i, n);
        if v != 0 {
            or_bits(dst, dst_off + i, n, v);
        }
        i += n;
    }
}

/// A subset of `F_p`, stored as a `p`-bit membership vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpSet {
    p: Prime,
    // bits at positions >= p are always zero
    words: Vec<u64>,
}

impl FpSet {
    pub fn empty(p: Prime) -> Self {
        FpSet {
            p,
            words: vec![0; p.size().div_ceil(WORD)],
        }
    }

    pub fn full(p: Prime) -> Self {
        let mut s = Self::empty(p);
        s.words.iter_mut().for_each(|w| *w = !0);
        let tail = p.size() % WORD;
        if tail != 0 {
            *s.words.last_mut().unwrap() = (1u64 << tail) - 1;
        }
        s
    }

    pub fn singleton(x: Fp) -> Self {
        let mut s = Self::empty(x.prime());
        s.insert(x);
        s
    }

    /// Builds a set from integers, normalizing each modulo `p`.
    pub fn from_ints<I: IntoIterator<Item = i64>>(p: Prime, items: I) -> Self {
        let mut s = Self::empty(p);
        for x in items {
            s.insert(p.elem(x));
        }
        s
    }

    pub fn from_elems<I: IntoIterator<Item = Fp>>(p: Prime, items: I) -> Self {
        let mut s = Self::empty(p);
        for x in items {
            s.insert(x);
        }
        s
    }

    /// The set whose residues are the set bits of `mask`; needs `p <= 64`.
    pub(crate) fn from_mask(p: Prime, mask: u64) -> Self {
        debug_assert!(p.size() <= WORD && (p.size() == WORD || mask >> p.size() == 0));
        FpSet { p, words: vec![mask] }
    }

    /// The integer interval `[lo, hi]` reduced mod `p` (empty when `lo > hi`).
    pub fn interval(p: Prime, lo: i64, hi: i64) -> Self {
        Self::from_ints(p, lo..=hi)
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn contains(&self, x: Fp) -> bool {
        debug_assert_eq!(x.prime(), self.p);
        self.contains_residue(x.value())
    }

    #[inline]
    pub fn contains_residue(&self, r: u64) -> bool {
        let r = r as usize;
        self.words[r / WORD] >> (r % WORD) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, x: Fp) {
        debug_assert_eq!(x.prime(), self.p);
        let r = x.value() as usize;
        self.words[r / WORD] |= 1 << (r % WORD);
    }

    #[inline]
    pub fn remove(&mut self, x: Fp) {
        let r = x.value() as usize;
        self.words[r / WORD] &= !(1 << (r % WORD));
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Members in increasing residue order.
    pub fn iter(&self) -> impl Iterator<Item = Fp> + '_ {
        let p = self.p;
        self.words.iter().enumerate().flat_map(move |(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(p.elem_u64((i * WORD + b) as u64))
            })
        })
    }

    pub fn residues(&self) -> Vec<u64> {
        self.iter().map(Fp::value).collect()
    }

    pub fn max(&self) -> Option<Fp> {
        let (i, &w) = self.words.iter().enumerate().rev().find(|(_, &w)| w != 0)?;
        Some(self.p.elem_u64((i * WORD + 63 - w.leading_zeros() as usize) as u64))
    }

    pub(crate) fn check_context(&self, other: &FpSet) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ContextMismatch(self.p.get(), other.p.get()));
        }
        Ok(())
    }

    /// `self |= src + a`, translation taken mod `p`.
    pub fn union_shifted(&mut self, src: &FpSet, a: Fp) {
        debug_assert_eq!(self.p, src.p);
        let p = self.p.size();
        let a = a.value() as usize;
        // x in [0, p-a) lands at x + a; x in [p-a, p) wraps to x + a - p
        or_range(&mut self.words, &src.words, 0, a, p - a);
        if a > 0 {
            or_range(&mut self.words, &src.words, p - a, 0, a);
        }
    }

    /// `{x + a : x in self}`
    pub fn shifted(&self, a: Fp) -> FpSet {
        let mut out = FpSet::empty(self.p);
        out.union_shifted(self, a);
        out
    }

    pub fn union_with(&mut self, other: &FpSet) {
        debug_assert_eq!(self.p, other.p);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }

    pub fn union(&self, other: &FpSet) -> Result<FpSet> {
        self.check_context(other)?;
        let mut out = self.clone();
        out.union_with(other);
        Ok(out)
    }

    pub fn intersection(&self, other: &FpSet) -> Result<FpSet> {
        self.check_context(other)?;
        let mut out = self.clone();
        for (w, o) in out.words.iter_mut().zip(&other.words) {
            *w &= o;
        }
        Ok(out)
    }

    pub fn is_subset(&self, other: &FpSet) -> bool {
        self.p == other.p && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &FpSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// `{-x : x in self}`
    pub fn negated(&self) -> FpSet {
        FpSet::from_elems(self.p, self.iter().map(|x| -x))
    }

    /// `{s - x : x in self}`
    pub fn reflected(&self, s: Fp) -> FpSet {
        FpSet::from_elems(self.p, self.iter().map(|x| s - x))
    }

    /// The dilation `{l * x : x in self}`.
    pub fn dilated(&self, l: Fp) -> FpSet {
        FpSet::from_elems(self.p, self.iter().map(|x| l * x))
    }

    pub fn sum(&self) -> Fp {
        self.iter().fold(self.p.zero(), |acc, x| acc + x)
    }
}

impl fmt::Debug for FpSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpSet(p={}, ", self.p)?;
        f.debug_set().entries(self.iter().map(Fp::value)).finish()?;
        write!(f, ")")
    }
}

impl Serialize for FpSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter().map(Fp::value))
    }
}
