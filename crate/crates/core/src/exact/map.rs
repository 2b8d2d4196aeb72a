//! Rational maps of the projective line and their evaluation.

use std::fmt;

use super::poly::{wronskian, Poly};
use super::ring::{Field, Ring};
use crate::error::{Error, Result};

/// A point of the projective line over `K`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProjPoint<K> {
    Finite(K),
    Infinity,
}

impl<K> ProjPoint<K> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, ProjPoint::Infinity)
    }

    pub fn finite(&self) -> Option<&K> {
        match self {
            ProjPoint::Finite(k) => Some(k),
            ProjPoint::Infinity => None,
        }
    }
}

impl<K: fmt::Display> fmt::Display for ProjPoint<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Finite(k) => k.fmt(f),
            ProjPoint::Infinity => f.write_str("inf"),
        }
    }
}

impl<K: fmt::Debug> fmt::Debug for ProjPoint<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Finite(k) => k.fmt(f),
            ProjPoint::Infinity => f.write_str("inf"),
        }
    }
}

/// Multiplicity of `a` as a root of `p`. The point at infinity is rejected;
/// callers conjugate by `1/x` instead.
pub fn ord_at<K: Field>(p: &Poly<K>, a: &ProjPoint<K>) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    match a {
        ProjPoint::Finite(a) => Ok(p.root_multiplicity(a)),
        ProjPoint::Infinity => Err(Error::InfinityNotAllowed),
    }
}

/// `num / den` with coprime parts and a nonzero denominator.
#[derive(Clone, PartialEq)]
pub struct RationalMap<K: Ring> {
    num: Poly<K>,
    den: Poly<K>,
}

impl<K: Ring> RationalMap<K> {
    /// Trusts the caller that the parts are coprime.
    pub fn from_coprime_parts(num: Poly<K>, den: Poly<K>) -> Self {
        assert!(!den.is_zero(), "rational map with zero denominator");
        Self { num, den }
    }

    /// The polynomial map `p`.
    pub fn polynomial(p: Poly<K>) -> Self {
        let one = Poly::one(p.ctx().clone());
        Self { num: p, den: one }
    }

    pub fn num(&self) -> &Poly<K> {
        &self.num
    }

    pub fn den(&self) -> &Poly<K> {
        &self.den
    }

    /// `max(deg num, deg den)`; a nonzero constant has degree 0, and so does
    /// the zero map.
    pub fn degree(&self) -> usize {
        self.num.degree_or_zero().max(self.den.degree_or_zero())
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0
    }

    /// `num' den - num den'`.
    pub fn wronskian(&self) -> Poly<K> {
        wronskian(&self.num, &self.den)
    }

    /// `f(1/x)`.
    pub fn precompose_reciprocal(&self) -> Self {
        let n = self.degree();
        Self {
            num: self.num.reversed(n),
            den: self.den.reversed(n),
        }
    }

    /// `f(1 - x)`.
    pub fn precompose_reflection(&self) -> Self {
        Self {
            num: self.num.reflect(),
            den: self.den.reflect(),
        }
    }

    /// `1 / f`.
    pub fn reciprocal(&self) -> Self {
        assert!(!self.num.is_zero(), "reciprocal of the zero map");
        Self {
            num: self.den.clone(),
            den: self.num.clone(),
        }
    }

    /// `1 - f`.
    pub fn one_minus(&self) -> Self {
        Self {
            num: &self.den - &self.num,
            den: self.den.clone(),
        }
    }
}

impl<K: Field> RationalMap<K> {
    /// Divides out the gcd of the parts.
    pub fn new(num: Poly<K>, den: Poly<K>) -> Self {
        assert!(!den.is_zero(), "rational map with zero denominator");
        let g = num.gcd(&den);
        let num = num.exact_div(&g).expect("gcd divides");
        let den = den.exact_div(&g).expect("gcd divides");
        Self { num, den }
    }

    /// Same map with a monic denominator; a canonical representative.
    pub fn with_monic_den(&self) -> Self {
        let l = self.den.lead().expect("nonzero denominator").inv();
        Self {
            num: self.num.scale(&l),
            den: self.den.scale(&l),
        }
    }

    /// Projective evaluation. Coprime parts rule out `0/0`.
    pub fn eval(&self, x: &ProjPoint<K>) -> ProjPoint<K> {
        match x {
            ProjPoint::Finite(a) => {
                let d = self.den.eval(a);
                if d.is_zero() {
                    ProjPoint::Infinity
                } else {
                    ProjPoint::Finite(self.num.eval(a).div(&d))
                }
            }
            ProjPoint::Infinity => {
                let dn = self.num.degree();
                let dd = self.den.degree();
                match (dn, dd) {
                    (None, _) => ProjPoint::Finite(K::zero_in(self.num.ctx())),
                    (Some(n), Some(d)) if n > d => ProjPoint::Infinity,
                    (Some(n), Some(d)) if n == d => ProjPoint::Finite(
                        self.num.lead().unwrap().div(self.den.lead().unwrap()),
                    ),
                    _ => ProjPoint::Finite(K::zero_in(self.num.ctx())),
                }
            }
        }
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &Self) -> Self {
        let n = self.degree();
        // Homogenize: sum c_i g_num^i g_den^(n-i).
        let ctx = self.num.ctx().clone();
        let mut gnum_pows = vec![Poly::one(ctx.clone())];
        let mut gden_pows = vec![Poly::one(ctx.clone())];
        for i in 0..n {
            gnum_pows.push(&gnum_pows[i] * &g.num);
            gden_pows.push(&gden_pows[i] * &g.den);
        }
        let hom = |p: &Poly<K>| {
            let mut acc = Poly::zero(ctx.clone());
            for (i, c) in p.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                acc = &acc + &(&gnum_pows[i] * &gden_pows[n - i]).scale(c);
            }
            acc
        };
        Self::new(hom(&self.num), hom(&self.den))
    }

    /// Derivative of `f` at `x`, read in the affine chart at `x` and the
    /// affine chart at `f(x)`, with `1/x` as the chart at infinity.
    /// Products of these around a cycle are chart-independent.
    pub fn local_derivative(&self, x: &ProjPoint<K>) -> K {
        let (map, at) = match x {
            ProjPoint::Finite(a) => (self.clone(), a.clone()),
            ProjPoint::Infinity => (
                self.precompose_reciprocal(),
                K::zero_in(self.num.ctx()),
            ),
        };
        let map = match map.eval(&ProjPoint::Finite(at.clone())) {
            ProjPoint::Infinity => map.reciprocal(),
            ProjPoint::Finite(_) => map,
        };
        let w = map.wronskian();
        let d = map.den.eval(&at);
        w.eval(&at).div(&d.mul(&d))
    }
}

impl<K: Ring> fmt::Debug for RationalMap<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} / {:?}", self.num, self.den)
    }
}
