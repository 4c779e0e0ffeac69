//! Evaluation fields: a word-sized prime field and exact rationals.
//!
//! Everything downstream is generic over [`Field`], so the same alternant and
//! orbit-sum code runs mod p for large instances and over `BigRational` when
//! the instance is small enough to afford exact arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Default modulus: 2^62 - 57, the largest prime below 2^62.
pub const DEFAULT_PRIME: u64 = 4_611_686_018_427_387_847;

/// Smallest modulus accepted by [`Fp::new`].
pub const MIN_PRIME: u64 = 1_000_000_000;

/// Field operations used by the evaluation engine.
///
/// Constants are produced from an existing element (`x.zero()`, `x.one()`) so
/// that runtime-parameterized fields such as [`Fp`] carry their modulus along.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero(&self) -> Self;
    fn one(&self) -> Self;
    fn from_i64(&self, v: i64) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Integer power; negative exponents invert first.
    fn powi(&self, e: i64) -> Option<Self> {
        if e >= 0 {
            Some(self.pow(e as u64))
        } else {
            self.inv().map(|x| x.pow(e.unsigned_abs()))
        }
    }
}

/// Element of the prime field Z/pZ with p < 2^63.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    /// Builds an element, checking that `modulus` is a prime above [`MIN_PRIME`].
    pub fn new(value: u64, modulus: u64) -> Result<Self> {
        if !(MIN_PRIME..1 << 63).contains(&modulus) || !is_prime_u64(modulus) {
            return Err(Error::InvalidModulus(modulus));
        }
        Ok(Self::reduce(value, modulus))
    }

    /// Builds an element without validating the modulus.
    pub fn reduce(value: u64, modulus: u64) -> Self {
        Fp {
            value: value % modulus,
            modulus,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    #[inline]
    fn mulmod(a: u64, b: u64, m: u64) -> u64 {
        ((a as u128 * b as u128) % m as u128) as u64
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Field for Fp {
    fn zero(&self) -> Self {
        Fp {
            value: 0,
            modulus: self.modulus,
        }
    }

    fn one(&self) -> Self {
        Fp {
            value: 1,
            modulus: self.modulus,
        }
    }

    fn from_i64(&self, v: i64) -> Self {
        let m = self.modulus as i128;
        let r = (v as i128).rem_euclid(m);
        Fp {
            value: r as u64,
            modulus: self.modulus,
        }
    }

    #[inline]
    fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let s = self.value + rhs.value;
        Fp {
            value: if s >= self.modulus { s - self.modulus } else { s },
            modulus: self.modulus,
        }
    }

    #[inline]
    fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let value = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.value + self.modulus - rhs.value
        };
        Fp {
            value,
            modulus: self.modulus,
        }
    }

    #[inline]
    fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Fp {
            value: Self::mulmod(self.value, rhs.value, self.modulus),
            modulus: self.modulus,
        }
    }

    fn neg(&self) -> Self {
        Fp {
            value: if self.value == 0 {
                0
            } else {
                self.modulus - self.value
            },
            modulus: self.modulus,
        }
    }

    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        // extended Euclid on signed 128-bit values
        let (mut r0, mut r1) = (self.modulus as i128, self.value as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(Fp {
            value: t0.rem_euclid(self.modulus as i128) as u64,
            modulus: self.modulus,
        })
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl Field for BigRational {
    fn zero(&self) -> Self {
        <BigRational as Zero>::zero()
    }

    fn one(&self) -> Self {
        <BigRational as One>::one()
    }

    fn from_i64(&self, v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// Parses `a` or `a/b` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if Zero::is_zero(&den) {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Renders a rational as `n` or `n/d`.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        let sign = if q.is_negative() { "-" } else { "" };
        format!("{sign}{}/{}", q.numer().abs(), q.denom())
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = Fp::mulmod(acc, b, n);
            }
            b = Fp::mulmod(b, b, n);
            e >>= 1;
        }
        acc
    };
    'witness: for a in SMALL {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = Fp::mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_prime_is_prime() {
        assert!(is_prime_u64(DEFAULT_PRIME));
        assert!(!is_prime_u64(DEFAULT_PRIME + 2));
        assert!(is_prime_u64((1 << 61) - 1));
    }

    #[test]
    fn rejects_small_or_composite_modulus() {
        assert!(matches!(Fp::new(1, 101), Err(Error::InvalidModulus(101))));
        assert!(Fp::new(1, 1_000_000_008).is_err());
        assert!(Fp::new(1, 1_000_000_007).is_ok());
    }

    #[test]
    fn inverse_round_trips() {
        let x = Fp::new(123_456_789, DEFAULT_PRIME).unwrap();
        assert_eq!(x.mul(&x.inv().unwrap()), x.one());
        assert!(x.zero().inv().is_none());
        assert_eq!(x.from_i64(-1).add(&x.one()), x.zero());
    }

    #[test]
    fn negative_powers() {
        let x = parse_rational("2/3").unwrap();
        assert_eq!(x.powi(-2).unwrap(), parse_rational("9/4").unwrap());
        assert_eq!(format_rational(&parse_rational("-6/4").unwrap()), "-3/2");
        assert!(parse_rational("1/0").is_err());
    }
}
