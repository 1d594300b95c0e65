//! Polynomial-method constructions.
//!
//! A [`ProofModel`] describes a product of linear forms
//!
//! ```text
//! prod_{x in roots} (X_1 + ... + X_d + shift - x)
//!   * prod_{i<j} (X_j - X_i)              (when `vandermonde`)
//!   * prod_{i<j, j > cutoff} (X_j + X_i)  (when `plus_cutoff` is set)
//! ```
//!
//! together with a Cartesian grid `B_1 x ... x B_d` whose row sizes give
//! the target monomial `prod X_i^{|B_i| - 1}`. Witness models are built on
//! the extremal arithmetic progressions and vanish on every grid point but
//! one, `bstar`. Hypothesis models are built on an arbitrary set and a
//! candidate cover `C` of its subsums.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fp, Prime};
use crate::subsums::{is_asymmetric, FpSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem {
    /// `|A + B| >= min(p, |A| + |B| - 1)`
    Cd,
    /// `|h^A| >= min(p, h(|A| - h) + 1)`
    Dsh,
    /// `|Σ_α(A)| >= min(p, |A|(|A|+1)/2 - α(α+1)/2 + 1)` for asymmetric `A`
    Main,
}

impl Theorem {
    pub fn name(self) -> &'static str {
        match self {
            Theorem::Cd => "cd",
            Theorem::Dsh => "dsh",
            Theorem::Main => "main",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "theorem", rename_all = "lowercase")]
pub enum ModelParams {
    Cd { n: u64, m: u64 },
    Dsh { d: u64, h: u64 },
    Main { d: u64, alpha: u64 },
}

impl ModelParams {
    pub fn theorem(self) -> Theorem {
        match self {
            ModelParams::Cd { .. } => Theorem::Cd,
            ModelParams::Dsh { .. } => Theorem::Dsh,
            ModelParams::Main { .. } => Theorem::Main,
        }
    }
}

/// Which polynomial of the proof a model represents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// Built on an arbitrary set and a hypothetical cover of its subsums.
    Hypothesis,
    /// Built on the extremal arithmetic progression.
    Witness,
}

/// `d(d+1)/2 - α(α+1)/2`
pub fn triangular_gap(d: u64, alpha: u64) -> u64 {
    d * (d + 1) / 2 - alpha * (alpha + 1) / 2
}

pub fn cd_delta(n: u64, m: u64, p: Prime) -> u64 {
    (n + m).saturating_sub(1 + p.get())
}

pub fn dsh_delta(d: u64, h: u64, p: Prime) -> u64 {
    (h * (d - h) + 1).saturating_sub(p.get())
}

pub fn main_delta(d: u64, alpha: u64, p: Prime) -> u64 {
    triangular_gap(d, alpha).saturating_sub(p.get() - 1)
}

#[derive(Clone, Debug, Serialize)]
pub struct ProofModel {
    p: Prime,
    side: Side,
    params: ModelParams,
    delta: u64,
    grid: Vec<Vec<Fp>>,
    roots: Vec<Fp>,
    shift: Fp,
    vandermonde: bool,
    plus_cutoff: Option<usize>,
    monomial: Vec<u32>,
    bstar: Option<Vec<Fp>>,
}

/// Grid rows as 1-based element indices, plus the index pattern of `bstar`.
struct Layout {
    rows: Vec<Vec<i64>>,
    bstar: Vec<i64>,
}

fn dsh_layout(d: u64, h: u64, delta: u64) -> Layout {
    let (d, h, delta) = (d as i64, h as i64, delta as i64);
    let mut rows = Vec::new();
    let mut bstar = Vec::new();
    for i in 1..=h {
        let top = if i <= delta { d - h + i - 1 } else { d - h + i };
        rows.push((1..=top).collect());
        bstar.push(top);
    }
    Layout { rows, bstar }
}

fn main_layout(d: u64, alpha: u64, delta: u64) -> Layout {
    let (d, a, delta) = (d as i64, alpha as i64, delta as i64);
    let negatives = |lo: i64| (lo..=d).rev().map(|j| -j).collect::<Vec<_>>();
    let mut rows = Vec::new();
    let mut bstar = Vec::new();
    for i in 1..=d {
        if i <= delta {
            rows.push(negatives(a - i + 2));
            bstar.push(-(a - i + 2));
        } else if i <= a {
            rows.push(negatives(a - i + 1));
            bstar.push(-(a - i + 1));
        } else {
            let mut row = negatives(1);
            row.extend(1..=i);
            rows.push(row);
            bstar.push(if i == a + 1 { a + 1 - delta } else { i });
        }
    }
    Layout { rows, bstar }
}

struct Spec {
    side: Side,
    params: ModelParams,
    delta: u64,
    roots: Vec<Fp>,
    shift: Fp,
    vandermonde: bool,
    plus_cutoff: Option<usize>,
}

impl ProofModel {
    fn from_layout(p: Prime, spec: Spec, layout: &Layout, elem: impl Fn(i64) -> Fp) -> Self {
        let grid: Vec<Vec<Fp>> = layout
            .rows
            .iter()
            .map(|row| row.iter().map(|&j| elem(j)).collect())
            .collect();
        let monomial = grid.iter().map(|row| row.len() as u32 - 1).collect();
        let bstar = match spec.side {
            Side::Witness => Some(layout.bstar.iter().map(|&j| elem(j)).collect()),
            Side::Hypothesis => None,
        };
        let model = ProofModel {
            p,
            side: spec.side,
            params: spec.params,
            delta: spec.delta,
            grid,
            roots: spec.roots,
            shift: spec.shift,
            vandermonde: spec.vandermonde,
            plus_cutoff: spec.plus_cutoff,
            monomial,
            bstar,
        };
        debug_assert_eq!(model.monomial_degree(), model.total_degree());
        model
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn params(&self) -> ModelParams {
        self.params
    }

    pub fn theorem(&self) -> Theorem {
        self.params.theorem()
    }

    pub fn delta(&self) -> u64 {
        self.delta
    }

    pub fn grid(&self) -> &[Vec<Fp>] {
        &self.grid
    }

    pub fn roots(&self) -> &[Fp] {
        &self.roots
    }

    pub fn roots_set(&self) -> FpSet {
        FpSet::from_elems(self.p, self.roots.iter().copied())
    }

    pub fn shift(&self) -> Fp {
        self.shift
    }

    pub fn vandermonde(&self) -> bool {
        self.vandermonde
    }

    pub fn plus_cutoff(&self) -> Option<usize> {
        self.plus_cutoff
    }

    pub fn monomial(&self) -> &[u32] {
        &self.monomial
    }

    pub fn bstar(&self) -> Option<&[Fp]> {
        self.bstar.as_deref()
    }

    pub fn num_vars(&self) -> usize {
        self.grid.len()
    }

    pub fn vandermonde_pairs(&self) -> u64 {
        let d = self.num_vars() as u64;
        if self.vandermonde {
            d * d.saturating_sub(1) / 2
        } else {
            0
        }
    }

    /// Number of pairs `i < j` with `j > cutoff` (1-based).
    pub fn plus_pairs(&self) -> u64 {
        match self.plus_cutoff {
            None => 0,
            Some(cut) => ((cut + 1)..=self.num_vars()).map(|j| j as u64 - 1).sum(),
        }
    }

    /// Degree of the product of linear factors.
    pub fn total_degree(&self) -> u64 {
        self.roots.len() as u64 + self.vandermonde_pairs() + self.plus_pairs()
    }

    pub fn monomial_degree(&self) -> u64 {
        self.monomial.iter().map(|&k| k as u64).sum()
    }

    /// Number of points of the Cartesian grid.
    pub fn grid_size(&self) -> u128 {
        self.grid.iter().map(|row| row.len() as u128).product()
    }

    /// Value of the polynomial at `point`.
    pub fn eval(&self, point: &[Fp]) -> Fp {
        assert_eq!(point.len(), self.grid.len(), "point has the wrong dimension");
        let zero = self.p.zero();
        let mut acc = self.p.one();
        if self.vandermonde {
            for j in 1..point.len() {
                for i in 0..j {
                    acc *= point[j] - point[i];
                }
            }
        }
        if let Some(cut) = self.plus_cutoff {
            for j in cut.max(1)..point.len() {
                for i in 0..j {
                    acc *= point[j] + point[i];
                }
            }
        }
        if acc == zero {
            return zero;
        }
        let s = point.iter().fold(self.shift, |s, &x| s + x);
        for &x in &self.roots {
            acc *= s - x;
        }
        acc
    }
}

/// The Cauchy-Davenport witness model on `[1, n] x [1, m - δ]`.
pub fn cd_model(n: u64, m: u64, p: Prime) -> Result<ProofModel> {
    if n < 1 || m < 1 || n > p.get() || m > p.get() {
        return Err(Error::BadParams(format!("need 1 <= n, m <= p, got n = {n}, m = {m}")));
    }
    let delta = cd_delta(n, m, p);
    if delta >= n.min(m) {
        return Err(Error::DeltaTooLarge {
            delta,
            what: format!("n = {n}, m = {m}"),
        });
    }
    let m2 = (m - delta) as i64;
    let n = n as i64;
    let layout = Layout {
        rows: vec![(1..=n).collect(), (1..=m2).collect()],
        bstar: vec![n, m2],
    };
    let spec = Spec {
        side: Side::Witness,
        params: ModelParams::Cd { n: n as u64, m },
        delta,
        roots: (2..n + m2).map(|x| p.elem(x)).collect(),
        shift: p.zero(),
        vandermonde: false,
        plus_cutoff: None,
    };
    Ok(ProofModel::from_layout(p, spec, &layout, |j| p.elem(j)))
}

/// The Dias da Silva-Hamidoune witness model on `B = [1, d]`.
pub fn dsh_model(d: u64, h: u64, p: Prime) -> Result<ProofModel> {
    if h < 1 || h > d || d >= p.get() {
        return Err(Error::BadParams(format!("need 1 <= h <= d < p, got d = {d}, h = {h}")));
    }
    let delta = dsh_delta(d, h, p);
    if delta >= h {
        return Err(Error::DeltaTooLarge {
            delta,
            what: format!("d = {d}, h = {h}"),
        });
    }
    let lo = (h * (h + 1) / 2) as i64;
    let hi = (d * (d + 1) / 2 - (d - h) * (d - h + 1) / 2) as i64 - delta as i64 - 1;
    let spec = Spec {
        side: Side::Witness,
        params: ModelParams::Dsh { d, h },
        delta,
        roots: (lo..=hi).map(|x| p.elem(x)).collect(),
        shift: p.zero(),
        vandermonde: true,
        plus_cutoff: None,
    };
    Ok(ProofModel::from_layout(p, spec, &dsh_layout(d, h, delta), |j| p.elem(j)))
}

/// The bounded-subsum witness model on `B = 2[1, d]`.
///
/// Grid sums plus `m' = d(d+1)/2` are always `2t` with `t` a subsum of
/// `[1, d]`, so the root set is the dilation `{2t : t in [0, m - δ - 1]}`.
pub fn main_model(d: u64, alpha: u64, p: Prime) -> Result<ProofModel> {
    if !p.is_odd() {
        return Err(Error::BadField);
    }
    if alpha > d || d > (p.get() - 1) / 2 {
        return Err(Error::BadParams(format!(
            "need alpha <= d <= (p-1)/2, got d = {d}, alpha = {alpha}"
        )));
    }
    let delta = main_delta(d, alpha, p);
    if delta > alpha {
        return Err(Error::DeltaTooLarge {
            delta,
            what: format!("d = {d}, alpha = {alpha}"),
        });
    }
    let top = (triangular_gap(d, alpha) - delta) as i64;
    let spec = Spec {
        side: Side::Witness,
        params: ModelParams::Main { d, alpha },
        delta,
        roots: (0..top).map(|t| p.elem(2 * t)).collect(),
        shift: p.elem_u64(d * (d + 1) / 2),
        vandermonde: true,
        plus_cutoff: Some(alpha as usize),
    };
    Ok(ProofModel::from_layout(p, spec, &main_layout(d, alpha, delta), |j| p.elem(j)))
}

/// `|C|` required by the hypothesis model: one less than the bound, less
/// the wrap excess.
pub fn hypothesis_cover_size(params: ModelParams, p: Prime) -> u64 {
    match params {
        ModelParams::Cd { n, m } => (n + m).saturating_sub(cd_delta(n, m, p) + 2),
        ModelParams::Dsh { d, h } => (h * d.saturating_sub(h)).saturating_sub(dsh_delta(d, h, p)),
        ModelParams::Main { d, alpha } => triangular_gap(d, alpha).saturating_sub(main_delta(d, alpha, p)),
    }
}

fn check_cover(needed: u64, cover: &FpSet) -> Result<()> {
    let (needed, got) = (needed as usize, cover.len());
    match got.cmp(&needed) {
        std::cmp::Ordering::Less => Err(Error::CoverTooSmall { needed, got }),
        std::cmp::Ordering::Greater => Err(Error::CoverTooLarge { needed, got }),
        std::cmp::Ordering::Equal => Ok(()),
    }
}

/// Hypothesis model for `A + B ⊆ C`: grid `A x B'` with `B'` the first
/// `m - δ` elements of `B`.
pub fn cd_hypothesis(a: &FpSet, b: &FpSet, cover: &FpSet) -> Result<ProofModel> {
    a.check_context(b)?;
    a.check_context(cover)?;
    let p = a.prime();
    let (n, m) = (a.len() as u64, b.len() as u64);
    if n == 0 || m == 0 {
        return Err(Error::EmptyInput);
    }
    let delta = cd_delta(n, m, p);
    check_cover(hypothesis_cover_size(ModelParams::Cd { n, m }, p), cover)?;
    let a_elems: Vec<Fp> = a.iter().collect();
    let b_elems: Vec<Fp> = b.iter().take((m - delta) as usize).collect();
    let layout = Layout {
        rows: vec![(1..=n as i64).collect(), (-(m as i64 - delta as i64)..=-1).rev().collect()],
        bstar: Vec::new(),
    };
    let spec = Spec {
        side: Side::Hypothesis,
        params: ModelParams::Cd { n, m },
        delta,
        roots: cover.iter().collect(),
        shift: p.zero(),
        vandermonde: false,
        plus_cutoff: None,
    };
    // positive indices address A, negative ones address B
    Ok(ProofModel::from_layout(p, spec, &layout, |j| {
        if j > 0 {
            a_elems[j as usize - 1]
        } else {
            b_elems[(-j) as usize - 1]
        }
    }))
}

/// Hypothesis model for `h^A ⊆ C`.
pub fn dsh_hypothesis(a: &FpSet, h: u64, cover: &FpSet) -> Result<ProofModel> {
    a.check_context(cover)?;
    let p = a.prime();
    let d = a.len() as u64;
    if h < 1 || h > d {
        return Err(Error::BadH {
            h: h as usize,
            size: d as usize,
        });
    }
    let delta = dsh_delta(d, h, p);
    if delta >= h {
        return Err(Error::DeltaTooLarge {
            delta,
            what: format!("d = {d}, h = {h}"),
        });
    }
    check_cover(hypothesis_cover_size(ModelParams::Dsh { d, h }, p), cover)?;
    let elems: Vec<Fp> = a.iter().collect();
    let spec = Spec {
        side: Side::Hypothesis,
        params: ModelParams::Dsh { d, h },
        delta,
        roots: cover.iter().collect(),
        shift: p.zero(),
        vandermonde: true,
        plus_cutoff: None,
    };
    Ok(ProofModel::from_layout(p, spec, &dsh_layout(d, h, delta), |j| {
        elems[j as usize - 1]
    }))
}

/// Hypothesis model for `Σ^α(A) ⊆ C` with `A = {2a_1, ..., 2a_d}`
/// asymmetric; the shift is `m = a_1 + ... + a_d`.
pub fn main_hypothesis(a: &FpSet, alpha: u64, cover: &FpSet) -> Result<ProofModel> {
    a.check_context(cover)?;
    let p = a.prime();
    if !p.is_odd() {
        return Err(Error::BadField);
    }
    if !is_asymmetric(a) {
        return Err(Error::NotAsymmetric);
    }
    let d = a.len() as u64;
    if alpha > d {
        return Err(Error::BadBounds(format!("alpha = {alpha}, |A| = {d}")));
    }
    let delta = main_delta(d, alpha, p);
    if delta > alpha {
        return Err(Error::DeltaTooLarge {
            delta,
            what: format!("d = {d}, alpha = {alpha}"),
        });
    }
    check_cover(hypothesis_cover_size(ModelParams::Main { d, alpha }, p), cover)?;
    let half = p.elem(2).inv()?;
    let halves: Vec<Fp> = a.iter().map(|x| x * half).collect();
    let shift = halves.iter().fold(p.zero(), |s, &x| s + x);
    let spec = Spec {
        side: Side::Hypothesis,
        params: ModelParams::Main { d, alpha },
        delta,
        roots: cover.iter().collect(),
        shift,
        vandermonde: true,
        plus_cutoff: Some(alpha as usize),
    };
    Ok(ProofModel::from_layout(p, spec, &main_layout(d, alpha, delta), |j| {
        let x = halves[j.unsigned_abs() as usize - 1];
        if j < 0 {
            -x
        } else {
            x
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subsums::SubsumTable;

    fn prime(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn ints(v: &[Fp]) -> Vec<i64> {
        v.iter().map(|x| x.centered()).collect()
    }

    fn grid_sizes(m: &ProofModel) -> Vec<usize> {
        m.grid().iter().map(Vec::len).collect()
    }

    /// Every grid point in lexicographic order.
    fn points(m: &ProofModel) -> Vec<Vec<Fp>> {
        let mut out = vec![Vec::new()];
        for row in m.grid() {
            out = out
                .into_iter()
                .flat_map(|pt| {
                    row.iter().map(move |&x| {
                        let mut q = pt.clone();
                        q.push(x);
                        q
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn deltas() {
        assert_eq!(cd_delta(2, 2, prime(7)), 0);
        assert_eq!(cd_delta(3, 3, prime(5)), 0);
        assert_eq!(cd_delta(4, 3, prime(5)), 1);
        assert_eq!(dsh_delta(7, 3, prime(11)), 2);
        assert_eq!(main_delta(5, 2, prime(11)), 2);
        assert_eq!(main_delta(2, 1, prime(7)), 0);
    }

    #[test]
    fn cd_examples() {
        let m = cd_model(2, 2, prime(7)).unwrap();
        assert_eq!(ints(m.roots()), vec![2, 3]);
        assert_eq!(ints(m.bstar().unwrap()), vec![2, 2]);
        assert_eq!(m.monomial(), &[1, 1]);

        let m = cd_model(1, 1, prime(5)).unwrap();
        assert!(m.roots().is_empty());
        assert_eq!(ints(m.bstar().unwrap()), vec![1, 1]);
        assert_eq!(m.monomial(), &[0, 0]);

        let m = cd_model(3, 3, prime(5)).unwrap();
        assert_eq!(m.delta(), 0);
        let roots: Vec<u64> = m.roots().iter().map(|x| x.value()).collect();
        assert_eq!(roots, vec![2, 3, 4, 0]);
        assert!(cd_model(6, 3, prime(5)).is_err());
    }

    #[test]
    fn dsh_examples() {
        let m = dsh_model(3, 2, prime(11)).unwrap();
        assert_eq!(m.grid()[0], vec![prime(11).elem(1), prime(11).elem(2)]);
        assert_eq!(grid_sizes(&m), vec![2, 3]);
        assert_eq!(ints(m.roots()), vec![3, 4]);
        assert_eq!(ints(m.bstar().unwrap()), vec![2, 3]);
        assert_eq!(m.monomial(), &[1, 2]);

        let m = dsh_model(7, 3, prime(11)).unwrap();
        assert_eq!(m.delta(), 2);
        assert_eq!(grid_sizes(&m), vec![4, 5, 7]);
        assert_eq!(m.roots().len(), 10);

        let m = dsh_model(6, 1, prime(11)).unwrap();
        assert_eq!(grid_sizes(&m), vec![6]);
        assert_eq!(ints(m.roots()), vec![1, 2, 3, 4, 5]);
        assert_eq!(m.bstar().unwrap()[0].value(), 6);

        assert!(matches!(dsh_model(6, 3, prime(7)), Err(Error::DeltaTooLarge { .. })));
    }

    #[test]
    fn main_examples() {
        let m = main_model(2, 1, prime(7)).unwrap();
        assert_eq!(ints(&m.grid()[0]), vec![-2, -1]);
        assert_eq!(ints(&m.grid()[1]), vec![-2, -1, 1, 2]);
        assert_eq!(ints(m.roots()), vec![0, 2]);
        assert_eq!(ints(m.bstar().unwrap()), vec![-1, 2]);
        assert_eq!(m.monomial(), &[1, 3]);
        assert_eq!(m.shift().value(), 3);

        let m = main_model(5, 2, prime(11)).unwrap();
        assert_eq!(m.delta(), 2);
        // rows past alpha have d + i elements
        assert_eq!(grid_sizes(&m), vec![3, 4, 8, 9, 10]);
        assert_eq!(m.roots().len(), 10);

        let m = main_model(3, 3, prime(7)).unwrap();
        assert_eq!(grid_sizes(&m), vec![1, 2, 3]);
        assert!(m.roots().is_empty());

        assert_eq!(main_model(1, 0, prime(2)).unwrap_err(), Error::BadField);
        assert!(matches!(main_model(5, 0, prime(11)), Err(Error::DeltaTooLarge { .. })));
    }

    #[test]
    fn eval_examples() {
        let p = prime(7);
        let m = main_model(2, 1, p).unwrap();
        assert_eq!(m.eval(&[p.elem(-1), p.elem(2)]).value(), 3);
        // equal coordinates kill the Vandermonde factor
        assert!(m.eval(&[p.elem(-1), p.elem(-1)]).is_zero());
        // opposite coordinates kill a plus factor
        assert!(m.eval(&[p.elem(-1), p.elem(1)]).is_zero());
        let d = dsh_model(3, 2, prime(11)).unwrap();
        assert!(d.eval(&[prime(11).elem(2), prime(11).elem(2)]).is_zero());
    }

    fn all_witness_models() -> Vec<ProofModel> {
        let mut out = Vec::new();
        for p in [5u64, 7, 11, 13] {
            let p = prime(p);
            for n in 1..=6 {
                for m in 1..=6 {
                    out.extend(cd_model(n, m, p).ok());
                }
            }
            for d in 1..=7 {
                for h in 1..=d {
                    out.extend(dsh_model(d, h, p).ok());
                }
                for a in 0..=d {
                    out.extend(main_model(d, a, p).ok());
                }
            }
        }
        out
    }

    #[test]
    fn degree_bookkeeping() {
        for m in all_witness_models() {
            assert_eq!(m.monomial_degree(), m.total_degree(), "{:?}", m.params());
            for (row, &k) in m.grid().iter().zip(m.monomial()) {
                assert_eq!(row.len() as u32, k + 1);
            }
            let bstar = m.bstar().unwrap();
            for (row, b) in m.grid().iter().zip(bstar) {
                assert!(row.contains(b), "{:?}", m.params());
            }
        }
        // the two closed degree expressions
        for m in all_witness_models() {
            match m.params() {
                ModelParams::Dsh { d, h } => {
                    assert_eq!(m.total_degree(), d * h - h * (h + 1) / 2 - m.delta())
                }
                ModelParams::Main { d, alpha } => assert_eq!(
                    m.total_degree(),
                    d * d + d * (d - 1) / 2 - alpha * alpha - m.delta()
                ),
                ModelParams::Cd { .. } => {}
            }
        }
    }

    #[test]
    fn unique_nonzero_point() {
        for m in all_witness_models() {
            if m.grid_size() > 200_000 {
                continue;
            }
            let nonzero: Vec<_> = points(&m).into_iter().filter(|pt| !m.eval(pt).is_zero()).collect();
            assert_eq!(nonzero, vec![m.bstar().unwrap().to_vec()], "{:?}", m.params());
        }
    }

    #[test]
    fn bstar_magnitudes_partition() {
        for m in all_witness_models() {
            if let ModelParams::Main { d, alpha } = m.params() {
                let b = ints(m.bstar().unwrap());
                let mut mags: Vec<i64> = b.iter().map(|x| x.abs()).collect();
                mags.sort_unstable();
                assert_eq!(mags, (1..=d as i64).collect::<Vec<_>>());
                assert_eq!(b.iter().filter(|&&x| x < 0).count() as u64, alpha);
            }
        }
    }

    #[test]
    fn hypothesis_main_on_progression_matches_witness_grid() {
        let p = prime(13);
        for d in 1..=6u64 {
            let a = FpSet::from_ints(p, (1..=d as i64).map(|i| 2 * i));
            for alpha in 0..=d {
                let Ok(witness) = main_model(d, alpha, p) else { continue };
                let cover = FpSet::from_elems(p, witness.roots().iter().copied());
                let hyp = main_hypothesis(&a, alpha, &cover).unwrap();
                assert_eq!(hyp.grid(), witness.grid());
                assert_eq!(hyp.shift(), witness.shift());
            }
        }
    }

    #[test]
    fn hypothesis_dsh_reproduces_witness_roots() {
        let p = prime(11);
        let a = FpSet::interval(p, 1, 5);
        let mut cover = SubsumTable::new(&a).hfold(2).unwrap();
        cover.remove(cover.max().unwrap());
        let hyp = dsh_hypothesis(&a, 2, &cover).unwrap();
        let witness = dsh_model(5, 2, p).unwrap();
        assert_eq!(hyp.roots_set(), witness.roots_set());
        assert_eq!(hyp.grid(), witness.grid());
    }

    #[test]
    fn hypothesis_errors() {
        let p = prime(11);
        let with_zero = FpSet::from_ints(p, [0, 2, 4]);
        let cover = FpSet::interval(p, 0, 4);
        assert_eq!(main_hypothesis(&with_zero, 1, &cover).unwrap_err(), Error::NotAsymmetric);
        let a = FpSet::from_ints(p, [1, 2, 3]);
        assert!(matches!(
            dsh_hypothesis(&a, 2, &FpSet::from_ints(p, [3])),
            Err(Error::CoverTooSmall { needed: 2, got: 1 })
        ));
        assert!(matches!(
            dsh_hypothesis(&a, 2, &FpSet::interval(p, 0, 5)),
            Err(Error::CoverTooLarge { .. })
        ));
    }

    #[test]
    fn hypothesis_vanishes_when_cover_contains_subsums() {
        // any C containing the relevant subsum set kills every grid point
        let p = prime(13);
        let sets = [vec![1i64, 3, 4], vec![2, 5, -6], vec![1, -2, 3, 4], vec![6, -1]];
        for xs in &sets {
            let a = FpSet::from_ints(p, xs.iter().copied());
            let t = SubsumTable::new(&a);
            let d = a.len() as u64;
            for alpha in 0..=d {
                let cover = t.sigma_upper(alpha as usize).unwrap();
                let model = ProofModel {
                    roots: cover.iter().collect(),
                    ..main_hypothesis(&a, alpha, &pad_cover(&cover, triangular_gap(d, alpha) - main_delta(d, alpha, p))).unwrap()
                };
                assert!(points(&model).iter().all(|pt| model.eval(pt).is_zero()));
            }
            for h in 1..=d {
                let Ok(base) = dsh_hypothesis(&a, h, &pad_cover(&t.row(h as usize), h * (d - h) - dsh_delta(d, h, p))) else {
                    continue;
                };
                let model = ProofModel {
                    roots: t.row(h as usize).iter().collect(),
                    ..base
                };
                assert!(points(&model).iter().all(|pt| model.eval(pt).is_zero()));
            }
        }
    }

    /// Some set of exactly `n` residues, used only to satisfy the size check.
    fn pad_cover(s: &FpSet, n: u64) -> FpSet {
        let p = s.prime();
        FpSet::from_elems(p, p.elements().take(n as usize))
    }
}
