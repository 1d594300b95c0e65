//! Exact closed forms of the certificate coefficients.
//!
//! Each value is built as a [`FactoredRational`] and reduced mod `p` only
//! at the end: the factorials involved can have arguments `>= p`, and only
//! the full quotient is guaranteed to be free of `p` in the denominator.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FactoredRational as Fr, Fp, Prime};

#[derive(Clone, Debug, Serialize)]
pub struct ClosedFormResult {
    pub exact: Fr,
    /// `None` when the exact value has `p` in its denominator.
    pub residue: Option<Fp>,
}

impl ClosedFormResult {
    fn new(exact: Fr, p: Prime) -> Result<Self> {
        let residue = match exact.reduce_mod(p) {
            Ok(r) => Some(r),
            Err(Error::NotPIntegral { .. }) => None,
            Err(e) => return Err(e),
        };
        Ok(ClosedFormResult { exact, residue })
    }

    pub fn residue(&self) -> Result<Fp> {
        self.residue.ok_or(Error::NotPIntegral {
            p: self.exact_prime_hint(),
        })
    }

    fn exact_prime_hint(&self) -> u64 {
        self.exact
            .exponents()
            .find(|&(_, e)| e < 0)
            .map(|(q, _)| q)
            .unwrap_or(0)
    }
}

fn binom(n: u64, k: u64) -> Result<Fr> {
    Fr::binomial(n as i64, k as i64)
}

/// `C(n + (m - δ) - 2, n - 1)`
pub fn cd_closed(n: u64, m: u64, delta: u64, p: Prime) -> Result<ClosedFormResult> {
    if n == 0 || m == 0 || delta >= n.min(m) {
        return Err(Error::BadParams(format!("n = {n}, m = {m}, delta = {delta}")));
    }
    ClosedFormResult::new(binom(n + m - delta - 2, n - 1)?, p)
}

/// `(h(d-h))! * C(d-h+δ-1, δ) C(h, δ) / C(h(d-h), δ) * h!! (d-h)!! / d!!`
/// where `n!!` is the product of the first `n` factorials.
pub fn dsh_closed(d: u64, h: u64, delta: u64, p: Prime) -> Result<ClosedFormResult> {
    if h > d || delta >= h {
        return Err(Error::BadParams(format!("d = {d}, h = {h}, delta = {delta}")));
    }
    let k = h * (d - h);
    let head = Fr::factorial(k);
    let binoms = Fr::binomial((d - h + delta) as i64 - 1, delta as i64)? * binom(h, delta)?;
    let binoms = binoms.div(&binom(k, delta)?)?;
    let sf = (Fr::superfactorial(h) * Fr::superfactorial(d - h)).div(&Fr::superfactorial(d))?;
    ClosedFormResult::new(head * binoms * sf, p)
}

/// With `m = d(d+1)/2 - α(α+1)/2`:
///
/// ```text
/// 2^{m-δ} m! / C(m, δ)
///   * C(d-α+δ-1, δ) C(α+1, δ) C(d+α+1, δ) / C(2α+2, δ)
///   * α!! (d-α)!! (d+α+1)!! / (d!! (2d+1)!!)
///   * prod_{i=α+1}^{d} (2i-1)!
/// ```
pub fn main_closed(d: u64, alpha: u64, delta: u64, p: Prime) -> Result<ClosedFormResult> {
    if alpha > d || delta > alpha {
        return Err(Error::BadParams(format!("d = {d}, alpha = {alpha}, delta = {delta}")));
    }
    let m = d * (d + 1) / 2 - alpha * (alpha + 1) / 2;
    if delta > m {
        return Err(Error::BadParams(format!("delta = {delta} exceeds m = {m}")));
    }
    let first = (Fr::from_int(2).pow((m - delta) as i64)? * Fr::factorial(m)).div(&binom(m, delta)?)?;
    let binoms = Fr::binomial((d - alpha + delta) as i64 - 1, delta as i64)?
        * binom(alpha + 1, delta)?
        * binom(d + alpha + 1, delta)?;
    let binoms = binoms.div(&binom(2 * alpha + 2, delta)?)?;
    let sf = (Fr::superfactorial(alpha) * Fr::superfactorial(d - alpha) * Fr::superfactorial(d + alpha + 1))
        .div(&(Fr::superfactorial(d) * Fr::superfactorial(2 * d + 1)))?;
    let tail = ((alpha + 1)..=d).fold(Fr::one(), |acc, i| acc * Fr::factorial(2 * i - 1));
    ClosedFormResult::new(first * binoms * sf * tail, p)
}
