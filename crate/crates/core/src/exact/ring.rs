//! Coefficient domains for [`Poly`](super::Poly).
//!
//! A domain carries a context value that every element of one polynomial
//! shares. For the integers and the rationals it is `()`; for a prime field
//! it is the modulus.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::Poly;

/// Commutative ring with identity, used as a polynomial coefficient domain.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    type Ctx: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero_in(ctx: &Self::Ctx) -> Self;
    fn one_in(ctx: &Self::Ctx) -> Self;
    /// Image of an integer under the canonical map `Z -> Self`.
    fn from_i64_in(n: i64, ctx: &Self::Ctx) -> Self;
    fn ctx(&self) -> Self::Ctx;

    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one_in(&self.ctx())
    }

    /// `self * n` for a small nonnegative integer `n` (formal derivatives).
    fn mul_usize(&self, n: usize) -> Self {
        let n = i64::try_from(n).expect("multiplier fits in i64");
        self.mul(&Self::from_i64_in(n, &self.ctx()))
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    /// Multiplicative inverse.
    ///
    /// Panics on zero; callers check first.
    fn inv(&self) -> Self;

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    /// Greatest common divisor of two polynomials, made monic.
    ///
    /// The default is the Euclidean algorithm. Domains where that suffers
    /// from coefficient growth override it.
    fn poly_gcd(a: &Poly<Self>, b: &Poly<Self>) -> Poly<Self> {
        a.euclid_gcd(b)
    }
}

impl Ring for BigInt {
    type Ctx = ();

    fn zero_in(_: &()) -> Self {
        BigInt::zero()
    }
    fn one_in(_: &()) -> Self {
        BigInt::one()
    }
    fn from_i64_in(n: i64, _: &()) -> Self {
        BigInt::from(n)
    }
    fn ctx(&self) {}
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul_usize(&self, n: usize) -> Self {
        self * BigInt::from(n)
    }
}

impl Ring for BigRational {
    type Ctx = ();

    fn zero_in(_: &()) -> Self {
        BigRational::zero()
    }
    fn one_in(_: &()) -> Self {
        BigRational::one()
    }
    fn from_i64_in(n: i64, _: &()) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn ctx(&self) {}
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul_usize(&self, n: usize) -> Self {
        self * BigRational::from_integer(BigInt::from(n))
    }
}

impl Field for BigRational {
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }

    // Euclid over Q blows up quickly; go through primitive integer remainders.
    fn poly_gcd(a: &Poly<Self>, b: &Poly<Self>) -> Poly<Self> {
        let (za, _) = a.clear_denominators();
        let (zb, _) = b.clear_denominators();
        let g = za.primitive_gcd(&zb);
        if g.is_zero() {
            return Poly::zero(());
        }
        g.to_rational().monic()
    }
}

