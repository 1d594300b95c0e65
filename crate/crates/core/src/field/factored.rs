use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Mul, Neg};

use serde::{Serialize, Serializer};

use super::{Fp, Prime};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    fn times(self, other: Sign) -> Sign {
        use Sign::*;
        match (self, other) {
            (Zero, _) | (_, Zero) => Zero,
            (a, b) if a == b => Positive,
            _ => Negative,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }
}

/// An exact rational number stored as a sign and a prime factorization.
///
/// Products, quotients and integer powers are exponent arithmetic, so
/// expressions built from factorials and binomials never overflow.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactoredRational {
    sign: Sign,
    // invariant: keys prime, values nonzero; empty when sign is Zero
    exponents: BTreeMap<u64, i64>,
}

fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Exponent of the prime `q` in `n!`.
fn legendre(n: u64, q: u64) -> i64 {
    let mut total = 0;
    let mut m = n / q;
    while m > 0 {
        total += m as i64;
        m /= q;
    }
    total
}

impl FactoredRational {
    pub fn zero() -> Self {
        FactoredRational {
            sign: Sign::Zero,
            exponents: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        FactoredRational {
            sign: Sign::Positive,
            exponents: BTreeMap::new(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        if n == 0 {
            return Self::zero();
        }
        let sign = if n < 0 { Sign::Negative } else { Sign::Positive };
        let mut m = n.unsigned_abs();
        let mut exponents = BTreeMap::new();
        let mut q = 2u64;
        while q * q <= m {
            while m.is_multiple_of(q) {
                *exponents.entry(q).or_insert(0) += 1;
                m /= q;
            }
            q += if q == 2 { 1 } else { 2 };
        }
        if m > 1 {
            *exponents.entry(m).or_insert(0) += 1;
        }
        FactoredRational { sign, exponents }
    }

    /// `n!`
    pub fn factorial(n: u64) -> Self {
        let exponents = primes_up_to(n)
            .into_iter()
            .map(|q| (q, legendre(n, q)))
            .collect();
        FactoredRational {
            sign: Sign::Positive,
            exponents,
        }
    }

    /// `0! * 1! * ... * (n-1)!`, the product of the first `n` factorials.
    pub fn superfactorial(n: u64) -> Self {
        let mut exponents = BTreeMap::new();
        if n >= 2 {
            for q in primes_up_to(n - 1) {
                let e: i64 = (0..n).map(|i| legendre(i, q)).sum();
                exponents.insert(q, e);
            }
        }
        FactoredRational {
            sign: Sign::Positive,
            exponents,
        }
    }

    /// `C(n, k)` with `C(n, 0) = 1` for every `n` and `C(n, k) = 0` when
    /// `0 <= n < k`.
    pub fn binomial(n: i64, k: i64) -> Result<Self> {
        if k == 0 {
            return Ok(Self::one());
        }
        if k < 0 || (n >= 0 && n < k) {
            return Ok(Self::zero());
        }
        if n < 0 {
            return Err(Error::BadParams(format!("binomial({n}, {k})")));
        }
        let (n, k) = (n as u64, k as u64);
        Self::factorial(n).div(&(Self::factorial(k) * Self::factorial(n - k)))
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn is_zero(&self) -> bool {
        self.sign == Sign::Zero
    }

    /// True when no prime appears with a negative exponent.
    pub fn is_integer(&self) -> bool {
        self.exponents.values().all(|&e| e >= 0)
    }

    pub fn exponent(&self, q: u64) -> i64 {
        self.exponents.get(&q).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.exponents.iter().map(|(&q, &e)| (q, e))
    }

    fn combine(&self, other: &Self, scale: i64) -> Self {
        let sign = self.sign.times(other.sign);
        if sign == Sign::Zero {
            return Self::zero();
        }
        let mut exponents = self.exponents.clone();
        for (&q, &e) in &other.exponents {
            let slot = exponents.entry(q).or_insert(0);
            *slot += scale * e;
            if *slot == 0 {
                exponents.remove(&q);
            }
        }
        FactoredRational { sign, exponents }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.combine(other, -1))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if self.is_zero() {
            return match e {
                0 => Ok(Self::one()),
                e if e > 0 => Ok(Self::zero()),
                _ => Err(Error::DivisionByZero),
            };
        }
        if e == 0 {
            return Ok(Self::one());
        }
        let sign = if self.sign == Sign::Negative && e % 2 != 0 {
            Sign::Negative
        } else {
            Sign::Positive
        };
        let exponents = self.exponents.iter().map(|(&q, &x)| (q, x * e)).collect();
        Ok(FactoredRational { sign, exponents })
    }

    /// Residue of the value mod `p`. Zero when `p` divides the numerator;
    /// `NotPIntegral` when `p` divides the denominator.
    pub fn reduce_mod(&self, p: Prime) -> Result<Fp> {
        let pv = p.get();
        match self.exponent(pv) {
            e if e < 0 => return Err(Error::NotPIntegral { p: pv }),
            e if e > 0 => return Ok(p.zero()),
            _ => {}
        }
        if self.is_zero() {
            return Ok(p.zero());
        }
        let mut num = p.one();
        let mut den = p.one();
        for (&q, &e) in &self.exponents {
            let base = p.elem_u64(q).pow(e.unsigned_abs());
            if e > 0 {
                num *= base;
            } else {
                den *= base;
            }
        }
        let value = num * den.inv()?;
        Ok(if self.sign == Sign::Negative { -value } else { value })
    }

    /// The value as an integer, if it is one and fits.
    pub fn to_i128(&self) -> Option<i128> {
        if !self.is_integer() {
            return None;
        }
        let mut acc: i128 = match self.sign {
            Sign::Zero => return Some(0),
            Sign::Positive => 1,
            Sign::Negative => -1,
        };
        for (&q, &e) in &self.exponents {
            acc = acc.checked_mul((q as i128).checked_pow(e as u32)?)?;
        }
        Some(acc)
    }
}

impl Mul for FactoredRational {
    type Output = FactoredRational;
    fn mul(self, rhs: FactoredRational) -> FactoredRational {
        self.combine(&rhs, 1)
    }
}

impl<'a> Mul<&'a FactoredRational> for &'a FactoredRational {
    type Output = FactoredRational;
    fn mul(self, rhs: &'a FactoredRational) -> FactoredRational {
        self.combine(rhs, 1)
    }
}

impl Neg for FactoredRational {
    type Output = FactoredRational;
    fn neg(mut self) -> FactoredRational {
        self.sign = match self.sign {
            Sign::Negative => Sign::Positive,
            Sign::Positive => Sign::Negative,
            Sign::Zero => Sign::Zero,
        };
        self
    }
}

impl fmt::Display for FactoredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Zero => return write!(f, "0"),
            Sign::Negative => write!(f, "-")?,
            Sign::Positive => {}
        }
        let fmt_part = |parts: Vec<(u64, i64)>| -> String {
            if parts.is_empty() {
                return "1".into();
            }
            parts
                .iter()
                .map(|&(q, e)| if e == 1 { q.to_string() } else { format!("{q}^{e}") })
                .collect::<Vec<_>>()
                .join("*")
        };
        let num: Vec<_> = self.exponents().filter(|&(_, e)| e > 0).collect();
        let den: Vec<_> = self
            .exponents()
            .filter(|&(_, e)| e < 0)
            .map(|(q, e)| (q, -e))
            .collect();
        if den.is_empty() {
            write!(f, "{}", fmt_part(num))
        } else {
            write!(f, "{}/({})", fmt_part(num), fmt_part(den))
        }
    }
}

impl Serialize for FactoredRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fr(n: i64) -> FactoredRational {
        FactoredRational::from_int(n)
    }

    #[test]
    fn factorials() {
        assert_eq!(FactoredRational::factorial(0), FactoredRational::one());
        assert_eq!(FactoredRational::factorial(5), fr(120));
        assert_eq!(FactoredRational::factorial(5).exponent(2), 3);
        assert_eq!(FactoredRational::factorial(6), fr(720));
        assert_eq!(FactoredRational::factorial(6).to_string(), "2^4*3^2*5");
    }

    #[test]
    fn superfactorials() {
        assert_eq!(FactoredRational::superfactorial(0), fr(1));
        assert_eq!(FactoredRational::superfactorial(1), fr(1));
        assert_eq!(FactoredRational::superfactorial(3), fr(2));
        assert_eq!(FactoredRational::superfactorial(4), fr(12));
    }

    #[test]
    fn superfactorial_recurrence() {
        let mut acc = FactoredRational::superfactorial(0);
        for n in 0..=100 {
            assert_eq!(acc, FactoredRational::superfactorial(n));
            acc = acc * FactoredRational::factorial(n);
        }
    }

    #[test]
    fn vandermonde_product_of_differences() {
        for n in 0..=12i64 {
            let mut direct: i128 = 1;
            for i in 1..=n {
                for j in (i + 1)..=n {
                    direct *= (j - i) as i128;
                }
            }
            assert_eq!(FactoredRational::superfactorial(n as u64).to_i128(), Some(direct));
        }
    }

    #[test]
    fn arithmetic() {
        assert_eq!(fr(24) * fr(15), fr(360));
        assert_eq!(fr(720).div(&fr(24)).unwrap(), fr(30));
        assert_eq!(fr(2).pow(10).unwrap(), fr(1024));
        assert_eq!(fr(5).div(&FactoredRational::zero()), Err(Error::DivisionByZero));
        assert_eq!(fr(-3).pow(3).unwrap(), fr(-27));
        assert!(fr(0).is_zero());
        assert_eq!(fr(0) * fr(7), FactoredRational::zero());
    }

    #[test]
    fn binomials() {
        assert_eq!(FactoredRational::binomial(5, 2).unwrap(), fr(10));
        assert_eq!(FactoredRational::binomial(-1, 0).unwrap(), fr(1));
        assert_eq!(FactoredRational::binomial(2, 3).unwrap(), FactoredRational::zero());
        assert_eq!(FactoredRational::binomial(12, 2).unwrap(), fr(66));
    }

    #[test]
    fn reduction() {
        let p7 = Prime::new(7).unwrap();
        assert_eq!(fr(12).reduce_mod(p7).unwrap().value(), 5);
        let inv24 = fr(1).div(&fr(24)).unwrap();
        assert_eq!(inv24.reduce_mod(p7).unwrap().value(), 5);
        let inv7 = fr(1).div(&fr(7)).unwrap();
        assert_eq!(inv7.reduce_mod(p7), Err(Error::NotPIntegral { p: 7 }));
        assert_eq!(fr(14).reduce_mod(p7).unwrap().value(), 0);
        assert_eq!(fr(-2).reduce_mod(p7).unwrap().value(), 5);
    }

    #[test]
    fn reduction_is_multiplicative() {
        let p = Prime::new(13).unwrap();
        let values: Vec<FactoredRational> = (-30..=30)
            .filter(|&n| n != 0)
            .flat_map(|n| [fr(n), fr(1).div(&fr(n)).unwrap()])
            .collect();
        for a in &values {
            for b in &values {
                let (ra, rb, rab) = (a.reduce_mod(p), b.reduce_mod(p), (a * b).reduce_mod(p));
                if let (Ok(ra), Ok(rb), Ok(rab)) = (ra, rb, rab) {
                    assert_eq!(ra * rb, rab, "{a} * {b}");
                }
            }
        }
    }
}
