//! Prime-field arithmetic.
//!
//! [`Prime`] is a checked field order, [`Fp`] a canonical residue in
//! `[0, p)`. Closed-form coefficients are carried exactly as
//! [`FactoredRational`] values and only reduced at the end.

mod factored;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub use factored::{FactoredRational, Sign};

/// Witnesses making Miller-Rabin deterministic for every `n < 3.3 * 10^24`.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &MR_WITNESSES {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The order of a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// Field size as a bit-vector length.
    #[inline]
    pub fn size(self) -> usize {
        self.0 as usize
    }

    pub fn is_odd(self) -> bool {
        self.0 != 2
    }

    pub fn zero(self) -> Fp {
        Fp { value: 0, p: self }
    }

    pub fn one(self) -> Fp {
        Fp {
            value: 1 % self.0,
            p: self,
        }
    }

    /// `x mod p` in `[0, p)`.
    pub fn elem(self, x: i64) -> Fp {
        Fp {
            value: x.rem_euclid(self.0 as i64) as u64,
            p: self,
        }
    }

    pub fn elem_u64(self, x: u64) -> Fp {
        Fp {
            value: x % self.0,
            p: self,
        }
    }

    /// Iterates over every element of the field in increasing residue order.
    pub fn elements(self) -> impl Iterator<Item = Fp> {
        (0..self.0).map(move |value| Fp { value, p: self })
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A canonical residue modulo a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    p: Prime,
}

impl Fp {
    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn prime(self) -> Prime {
        self.p
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn pow(self, exp: u64) -> Fp {
        Fp {
            value: pow_mod(self.value, exp, self.p.0),
            p: self.p,
        }
    }

    /// Multiplicative inverse via Fermat's little theorem.
    pub fn inv(self) -> Result<Fp> {
        if self.value == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(self.p.0 - 2))
    }

    /// Signed representative in `(-p/2, p/2]`, used when printing grids.
    pub fn centered(self) -> i64 {
        let p = self.p.0;
        if self.value > p / 2 {
            self.value as i64 - p as i64
        } else {
            self.value as i64
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Serialize for Fp {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_u64(self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    #[inline]
    fn add(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p);
        let p = self.p.0;
        let s = self.value + rhs.value;
        Fp {
            value: if s >= p { s - p } else { s },
            p: self.p,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    #[inline]
    fn sub(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p);
        let p = self.p.0;
        Fp {
            value: if self.value >= rhs.value {
                self.value - rhs.value
            } else {
                self.value + p - rhs.value
            },
            p: self.p,
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    #[inline]
    fn neg(self) -> Fp {
        Fp {
            value: if self.value == 0 { 0 } else { self.p.0 - self.value },
            p: self.p,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    #[inline]
    fn mul(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p);
        Fp {
            value: mul_mod(self.value, rhs.value, self.p.0),
            p: self.p,
        }
    }
}

impl AddAssign for Fp {
    fn add_assign(&mut self, rhs: Fp) {
        *self = *self + rhs;
    }
}

impl SubAssign for Fp {
    fn sub_assign(&mut self, rhs: Fp) {
        *self = *self - rhs;
    }
}

impl MulAssign for Fp {
    fn mul_assign(&mut self, rhs: Fp) {
        *self = *self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn primality_small_values() {
        assert!(is_prime(11));
        assert!(!is_prime(1));
        assert!(!is_prime(0));
        assert!(is_prime(857));
        for n in 0..20_000 {
            assert_eq!(is_prime(n), trial_division(n), "n = {n}");
        }
    }

    #[test]
    fn primality_large_values() {
        assert!(is_prime(999_983));
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime((1 << 61) + 1));
        // strong pseudoprime to bases 2..=23
        assert!(!is_prime(3_825_123_056_546_413_051));
        assert!(is_prime(9_223_372_036_854_775_783));
    }

    #[test]
    fn normalize() {
        let p11 = Prime::new(11).unwrap();
        assert_eq!(p11.elem(-2).value(), 9);
        assert_eq!(p11.elem(13).value(), 2);
        assert_eq!(Prime::new(7).unwrap().elem(0).value(), 0);
    }

    #[test]
    fn inverses() {
        let p7 = Prime::new(7).unwrap();
        assert_eq!(p7.elem(3).inv().unwrap().value(), 5);
        assert_eq!(p7.one().inv().unwrap(), p7.one());
        assert_eq!(p7.zero().inv(), Err(Error::ZeroInverse));
        let p = Prime::new(10007).unwrap();
        for x in p.elements().skip(1) {
            let y = x.inv().unwrap();
            assert_eq!(x * y, p.one());
            assert_eq!(y.inv().unwrap(), x);
        }
    }

    #[test]
    fn rejects_composites() {
        assert_eq!(Prime::new(12), Err(Error::NotPrime(12)));
    }

    #[test]
    fn centered_representative() {
        let p = Prime::new(7).unwrap();
        assert_eq!(p.elem(-2).centered(), -2);
        assert_eq!(p.elem(3).centered(), 3);
    }
}
