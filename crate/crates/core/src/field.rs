//! Exact coefficient fields.
//!
//! Elements are plain values (`BigRational`, `u64`) and all arithmetic goes
//! through a field handle, so prime fields can carry their modulus at runtime.

use core::fmt::Debug;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + Debug {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Zero for the rationals.
    fn characteristic(&self) -> u64;
    /// Binomial coefficient `C(a, b)` as a field element.
    fn binomial(&self, a: u64, b: u64) -> Self::Elem;

    fn from_u64(&self, v: u64) -> Self::Elem {
        self.from_bigint(&BigInt::from(v))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `a - c * b`, the elimination kernel.
    fn sub_mul(&self, a: &Self::Elem, c: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.sub(a, &self.mul(c, b))
    }

    /// Falling factorial `a (a − 1) ⋯ (a − k + 1)`.
    fn falling(&self, a: u64, k: u64) -> Self::Elem {
        let mut acc = self.one();
        for t in 0..k {
            if t > a {
                return self.zero();
            }
            acc = self.mul(&acc, &self.from_u64(a - t));
        }
        acc
    }
}

/// The field of rational numbers with arbitrary-precision numerator and denominator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn binomial(&self, a: u64, b: u64) -> BigRational {
        if b > a {
            return BigRational::zero();
        }
        let b = b.min(a - b);
        let mut acc = BigInt::one();
        for t in 0..b {
            acc = acc * BigInt::from(a - t) / BigInt::from(t + 1);
        }
        BigRational::from_integer(acc)
    }
}

/// `Z/pZ` for a prime `p < 2^32`; elements are canonical residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }

    /// Binomial of two base-`p` digits.
    fn small_binomial(&self, a: u64, b: u64) -> u64 {
        if b > a {
            return 0;
        }
        let mut num = 1;
        let mut den = 1;
        for t in 0..b {
            num = num * ((a - t) % self.p) % self.p;
            den = den * ((t + 1) % self.p) % self.p;
        }
        num * self.pow(den, self.p - 2) % self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn from_bigint(&self, v: &BigInt) -> u64 {
        let r = v.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue fits in u64")
    }
    fn from_u64(&self, v: u64) -> u64 {
        v % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| self.pow(*a, self.p - 2))
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    /// Lucas: `C(a, b) ≡ Π C(a_i, b_i)` over base-`p` digits.
    fn binomial(&self, mut a: u64, mut b: u64) -> u64 {
        let mut acc = 1 % self.p;
        while b > 0 || a > 0 {
            let (ad, bd) = (a % self.p, b % self.p);
            if bd > ad {
                return 0;
            }
            acc = acc * self.small_binomial(ad, bd) % self.p;
            a /= self.p;
            b /= self.p;
        }
        acc
    }
    fn sub_mul(&self, a: &u64, c: &u64, b: &u64) -> u64 {
        self.sub(a, &(c * b % self.p))
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime `≥ start`.
pub fn next_prime(start: u64) -> u64 {
    let mut c = start.max(2);
    while !is_prime(c) {
        c += 1;
    }
    c
}

/// Integer value of a rational, if it has denominator one and fits.
pub fn rational_to_i64(q: &BigRational) -> Option<i64> {
    q.is_integer().then(|| q.to_integer().to_i64()).flatten()
}

/// Sign of a rational as `-1`, `0` or `1`.
pub fn rational_sign(q: &BigRational) -> i32 {
    match q.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

pub fn rational_abs(q: &BigRational) -> BigRational {
    q.abs()
}
