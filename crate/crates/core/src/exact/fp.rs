//! The prime field `F_p`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::factor::is_prime_u64;
use super::ring::{Field, Ring};
use crate::error::{Error, Result};

/// A modulus known to be prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    /// Largest supported modulus; products of two residues must fit in `u128`
    /// and the functional graph enumerates every residue.
    pub const MAX: u64 = 1 << 32;

    pub fn new(p: u64) -> Result<Self> {
        if p > Self::MAX || !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self(p))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    pub fn element(self, value: i64) -> Fp {
        Fp::from_i64(value, self)
    }
}

impl TryFrom<u64> for PrimeModulus {
    type Error = Error;

    fn try_from(p: u64) -> Result<Self> {
        Self::new(p)
    }
}

impl From<PrimeModulus> for u64 {
    fn from(p: PrimeModulus) -> u64 {
        p.0
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Element of `F_p`, stored canonically in `[0, p)`.
///
/// Arithmetic between elements of different fields panics.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: PrimeModulus,
}

impl Fp {
    pub fn new(value: u64, modulus: PrimeModulus) -> Self {
        Self {
            value: value % modulus.0,
            modulus,
        }
    }

    pub fn from_i64(value: i64, modulus: PrimeModulus) -> Self {
        let p = modulus.0 as i128;
        let v = (value as i128).rem_euclid(p) as u64;
        Self { value: v, modulus }
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> PrimeModulus {
        self.modulus
    }

    #[inline]
    fn check(self, other: Fp) {
        assert_eq!(
            self.modulus, other.modulus,
            "mixed-modulus arithmetic: F_{} and F_{}",
            self.modulus, other.modulus
        );
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let p = self.modulus.0 as u128;
        let mut base = self.value as u128;
        let mut acc: u128 = 1 % p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp::new(acc as u64, self.modulus)
    }

    /// Multiplicative order in `F_p^*`, or `None` for zero.
    pub fn multiplicative_order(self) -> Option<u64> {
        if self.value == 0 {
            return None;
        }
        let group = self.modulus.0 - 1;
        let mut order = group;
        let mut rest = group;
        let mut q = 2;
        while q * q <= rest {
            if rest % q == 0 {
                while rest % q == 0 {
                    rest /= q;
                }
                while order % q == 0 && self.pow(order / q).value == 1 {
                    order /= q;
                }
            }
            q += 1;
        }
        if rest > 1 {
            while order % rest == 0 && self.pow(order / rest).value == 1 {
                order /= rest;
            }
        }
        Some(order)
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus.0)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

impl Ring for Fp {
    type Ctx = PrimeModulus;

    fn zero_in(ctx: &PrimeModulus) -> Self {
        Fp::new(0, *ctx)
    }
    fn one_in(ctx: &PrimeModulus) -> Self {
        Fp::new(1, *ctx)
    }
    fn from_i64_in(n: i64, ctx: &PrimeModulus) -> Self {
        Fp::from_i64(n, *ctx)
    }
    fn ctx(&self) -> PrimeModulus {
        self.modulus
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn add(&self, other: &Self) -> Self {
        self.check(*other);
        let p = self.modulus.0;
        let s = self.value + other.value;
        Fp::new(if s >= p { s - p } else { s }, self.modulus)
    }
    fn sub(&self, other: &Self) -> Self {
        self.check(*other);
        let p = self.modulus.0;
        let v = if self.value >= other.value {
            self.value - other.value
        } else {
            self.value + p - other.value
        };
        Fp::new(v, self.modulus)
    }
    fn mul(&self, other: &Self) -> Self {
        self.check(*other);
        let v = (self.value as u128 * other.value as u128) % self.modulus.0 as u128;
        Fp::new(v as u64, self.modulus)
    }
    fn neg(&self) -> Self {
        if self.value == 0 {
            *self
        } else {
            Fp::new(self.modulus.0 - self.value, self.modulus)
        }
    }
    fn mul_usize(&self, n: usize) -> Self {
        self.mul(&Fp::new((n as u64) % self.modulus.0, self.modulus))
    }
}

impl Field for Fp {
    fn inv(&self) -> Self {
        assert!(self.value != 0, "inverse of zero in F_{}", self.modulus);
        self.pow(self.modulus.0 - 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    #[test]
    fn rejects_composite_moduli() {
        assert!(matches!(PrimeModulus::new(4), Err(Error::NotPrime(4))));
        assert!(PrimeModulus::new(1).is_err());
        assert!(PrimeModulus::new(0).is_err());
        assert!(PrimeModulus::new(7).is_ok());
    }

    #[test]
    fn canonical_representatives() {
        let p = f(5);
        assert_eq!(Fp::from_i64(-1, p).value(), 4);
        assert_eq!(Fp::from_i64(-10, p).value(), 0);
        assert_eq!(Fp::new(12, p).value(), 2);
    }

    #[test]
    fn inverse_and_order() {
        let p = f(7);
        for v in 1..7 {
            let a = Fp::new(v, p);
            assert!(a.mul(&a.inv()).is_one());
        }
        assert_eq!(Fp::new(3, p).multiplicative_order(), Some(6));
        assert_eq!(Fp::new(2, p).multiplicative_order(), Some(3));
        assert_eq!(Fp::new(6, p).multiplicative_order(), Some(2));
        assert_eq!(Fp::new(1, p).multiplicative_order(), Some(1));
        assert_eq!(Fp::new(0, p).multiplicative_order(), None);
        assert_eq!(Fp::new(3, f(5)).multiplicative_order(), Some(4));
    }

    #[test]
    #[should_panic(expected = "mixed-modulus")]
    fn mixed_moduli_panic() {
        let _ = Fp::new(1, f(3)).add(&Fp::new(1, f(5)));
    }
}
