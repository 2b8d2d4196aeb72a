//! Dense univariate polynomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::fp::{Fp, PrimeModulus};
use super::ring::{Field, Ring};
use crate::error::{Error, Result};

/// Polynomial with coefficients in `R`, stored densely in ascending degree.
///
/// The leading stored coefficient is never zero; the zero polynomial has no
/// coefficients and degree `None`.
#[derive(Clone, PartialEq)]
pub struct Poly<R: Ring> {
    coeffs: Vec<R>,
    ctx: R::Ctx,
}

pub type ZPoly = Poly<BigInt>;
pub type QPoly = Poly<BigRational>;
pub type FpPoly = Poly<Fp>;

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>, ctx: R::Ctx) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        debug_assert!(coeffs.iter().all(|c| c.ctx() == ctx));
        Self { coeffs, ctx }
    }

    pub fn zero(ctx: R::Ctx) -> Self {
        Self {
            coeffs: Vec::new(),
            ctx,
        }
    }

    pub fn one(ctx: R::Ctx) -> Self {
        let one = R::one_in(&ctx);
        Self::new(vec![one], ctx)
    }

    pub fn constant(c: R) -> Self {
        let ctx = c.ctx();
        Self::new(vec![c], ctx)
    }

    /// The polynomial `x`.
    pub fn x(ctx: R::Ctx) -> Self {
        Self::monomial(R::one_in(&ctx), 1)
    }

    /// `c * x^n`.
    pub fn monomial(c: R, n: usize) -> Self {
        let ctx = c.ctx();
        let mut coeffs = vec![R::zero_in(&ctx); n];
        coeffs.push(c);
        Self::new(coeffs, ctx)
    }

    /// `x - a`.
    pub fn linear_root(a: &R) -> Self {
        let ctx = a.ctx();
        Self::new(vec![a.neg(), R::one_in(&ctx)], ctx)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn ctx(&self) -> &R::Ctx {
        &self.ctx
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as 0. Only for bookkeeping
    /// where the zero case has already been excluded or is harmless.
    pub fn degree_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lead(&self) -> Option<&R> {
        self.coeffs.last()
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> R {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| R::zero_in(&self.ctx))
    }

    /// Exponents carrying a nonzero coefficient, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
    }

    pub fn eval(&self, x: &R) -> R {
        let mut acc = R::zero_in(&self.ctx);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul_usize(i))
            .collect();
        Self::new(coeffs, self.ctx.clone())
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(
            self.coeffs.iter().map(|a| a.mul(c)).collect(),
            self.ctx.clone(),
        )
    }

    /// Multiply by `x^n`.
    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![R::zero_in(&self.ctx); n];
        coeffs.extend(self.coeffs.iter().cloned());
        Self {
            coeffs,
            ctx: self.ctx.clone(),
        }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.ctx.clone());
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Order of vanishing at `x = 0`; `None` for the zero polynomial.
    pub fn x_valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero(self.ctx.clone());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Self::constant(c.clone());
        }
        acc
    }

    /// `self(1 - x)`.
    pub fn reflect(&self) -> Self {
        let one_minus_x = Self::new(
            vec![R::one_in(&self.ctx), R::one_in(&self.ctx).neg()],
            self.ctx.clone(),
        );
        self.compose(&one_minus_x)
    }

    /// `x^n * self(1/x)`; requires `n >= deg`.
    pub fn reversed(&self, n: usize) -> Self {
        assert!(self.degree_or_zero() <= n, "reversal below the degree");
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![R::zero_in(&self.ctx); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[n - i] = c.clone();
        }
        Self::new(coeffs, self.ctx.clone())
    }

    /// Keep the coefficients at exponents divisible by `step`, and divide the
    /// exponents by it: `sum a_{k step} x^k`.
    pub fn decimate(&self, step: usize) -> Self {
        assert!(step > 0);
        Self::new(
            self.coeffs.iter().step_by(step).cloned().collect(),
            self.ctx.clone(),
        )
    }

    pub fn map_coeffs<S: Ring>(&self, ctx: S::Ctx, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect(), ctx)
    }
}

/// Wronskian `f1' f2 - f1 f2'`; the numerator of the derivative of `f1/f2`.
pub fn wronskian<R: Ring>(f1: &Poly<R>, f2: &Poly<R>) -> Poly<R> {
    &(&f1.derivative() * f2) - &(f1 * &f2.derivative())
}

impl<R: Field> Poly<R> {
    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let Some(nd) = self.degree() else {
            return (self.clone(), self.clone());
        };
        if nd < dd {
            return (Self::zero(self.ctx.clone()), self.clone());
        }
        let inv_lead = divisor.coeffs[dd].inv();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![R::zero_in(&self.ctx); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = rem[i + dd].mul(&inv_lead);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].sub(&c.mul(dc));
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (
            Self::new(quot, self.ctx.clone()),
            Self::new(rem, self.ctx.clone()),
        )
    }

    /// Exact quotient, or `None` if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv()),
        }
    }

    /// Monic gcd by the plain Euclidean algorithm.
    pub fn euclid_gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Monic greatest common divisor; zero only if both inputs are zero.
    pub fn gcd(&self, other: &Self) -> Self {
        R::poly_gcd(self, other)
    }

    /// Multiplicity of `a` as a root; 0 if not a root. Panics on the zero
    /// polynomial, whose multiplicities are undefined.
    pub fn root_multiplicity(&self, a: &R) -> usize {
        assert!(!self.is_zero(), "root multiplicity of the zero polynomial");
        let lin = Self::linear_root(a);
        let mut p = self.clone();
        let mut k = 0;
        while let Some(q) = p.exact_div(&lin) {
            p = q;
            k += 1;
        }
        k
    }
}

impl ZPoly {
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect(), ())
    }

    /// Positive gcd of the coefficients.
    pub fn content(&self) -> Result<BigInt> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self
            .coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c)))
    }

    /// `self / content(self)`; the sign of the leading coefficient is kept.
    pub fn primitive_part(&self) -> Result<ZPoly> {
        let c = self.content()?;
        Ok(Self::new(self.coeffs.iter().map(|a| a / &c).collect(), ()))
    }

    /// Pseudo-remainder `lead(b)^(deg a - deg b + 1) * a mod b`, over `Z`.
    fn pseudo_rem(&self, b: &ZPoly) -> ZPoly {
        let db = b.degree().expect("pseudo-division by zero");
        let lb = &b.coeffs[db];
        let mut r = self.coeffs.clone();
        while r.len() > db && !r.is_empty() {
            let top = r.len() - 1;
            let c = r[top].clone();
            let shift = top - db;
            for a in r.iter_mut() {
                *a *= lb;
            }
            for (j, bc) in b.coeffs.iter().enumerate() {
                r[shift + j] -= &c * bc;
            }
            debug_assert!(Zero::is_zero(&r[top]));
            while r.last().is_some_and(|x| Zero::is_zero(x)) {
                r.pop();
            }
        }
        ZPoly::new(r, ())
    }

    /// Primitive gcd over `Z[x]` (equivalently the gcd over `Q[x]` up to a
    /// unit), normalized to positive leading coefficient.
    pub fn primitive_gcd(&self, other: &ZPoly) -> ZPoly {
        let mut a = match self.primitive_part() {
            Ok(p) => p,
            Err(_) => return other.primitive_part().map(Self::positive_lead).unwrap_or_else(|_| ZPoly::zero(())),
        };
        let mut b = match other.primitive_part() {
            Ok(p) => p,
            Err(_) => return Self::positive_lead(a),
        };
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = match r.primitive_part() {
                Ok(p) => p,
                Err(_) => ZPoly::zero(()),
            };
        }
        Self::positive_lead(a)
    }

    fn positive_lead(p: ZPoly) -> ZPoly {
        match p.lead() {
            Some(l) if l.is_negative() => -&p,
            _ => p,
        }
    }

    pub fn to_rational(&self) -> QPoly {
        self.map_coeffs((), |c| BigRational::from_integer(c.clone()))
    }

    /// Coefficientwise reduction modulo `p`.
    pub fn reduce_mod(&self, p: PrimeModulus) -> FpPoly {
        let m = BigInt::from(p.get());
        self.map_coeffs(p, |c| {
            let r = c.mod_floor(&m);
            let v: u64 = r.try_into().expect("residue fits in u64");
            Fp::new(v, p)
        })
    }

    /// `sum a_i u^i v^(n-i)` with `n = deg`; vanishes iff `u/v` is a root
    /// (for `v != 0`).
    pub fn eval_homogeneous(&self, u: &BigInt, v: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        let mut vpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            // Horner in u with the v-powers accumulated from the top down.
            acc = acc * u + c * &vpow;
            vpow *= v;
        }
        acc
    }
}

impl QPoly {
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        ZPoly::from_i64s(coeffs).to_rational()
    }

    /// Writes `self = scale * p` with `p` a primitive integer polynomial and
    /// `scale` a positive rational. The zero polynomial gives `(0, 1)`.
    pub fn clear_denominators(&self) -> (ZPoly, BigRational) {
        if self.is_zero() {
            return (ZPoly::zero(()), BigRational::one());
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let z = ZPoly::new(ints, ());
        let content = z.content().expect("nonzero");
        let prim = z.primitive_part().expect("nonzero");
        (prim, BigRational::new(content, lcm))
    }
}

impl<R: Ring> Add for &Poly<R> {
    type Output = Poly<R>;

    fn add(self, rhs: &Poly<R>) -> Poly<R> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&rhs.coeff(i))).collect();
        Poly::new(coeffs, self.ctx.clone())
    }
}

impl<R: Ring> Sub for &Poly<R> {
    type Output = Poly<R>;

    fn sub(self, rhs: &Poly<R>) -> Poly<R> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).sub(&rhs.coeff(i))).collect();
        Poly::new(coeffs, self.ctx.clone())
    }
}

impl<R: Ring> Mul for &Poly<R> {
    type Output = Poly<R>;

    fn mul(self, rhs: &Poly<R>) -> Poly<R> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.ctx.clone());
        }
        let mut out = vec![R::zero_in(&self.ctx); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::new(out, self.ctx.clone())
    }
}

impl<R: Ring> Neg for &Poly<R> {
    type Output = Poly<R>;

    fn neg(self) -> Poly<R> {
        Poly::new(self.coeffs.iter().map(|c| c.neg()).collect(), self.ctx.clone())
    }
}

impl<R: Ring> Add for Poly<R> {
    type Output = Poly<R>;
    fn add(self, rhs: Poly<R>) -> Poly<R> {
        &self + &rhs
    }
}

impl<R: Ring> Sub for Poly<R> {
    type Output = Poly<R>;
    fn sub(self, rhs: Poly<R>) -> Poly<R> {
        &self - &rhs
    }
}

impl<R: Ring> Mul for Poly<R> {
    type Output = Poly<R>;
    fn mul(self, rhs: Poly<R>) -> Poly<R> {
        &self * &rhs
    }
}

impl<R: Ring> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}
