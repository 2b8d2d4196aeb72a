//! Explicit normalized Belyi maps and their exact verification.
//!
//! Two families have closed forms: the polynomial maps of type
//! `(d; d-k, k+1, d)` and the maps of type `(d; d-k, 2k+1, d-k)`, which
//! commute with `x -> 1/x`. Every other ordering of the same indices is
//! reached by conjugating with the Möbius map permuting `{0, 1, ∞}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::combinatorics::{classify, Classification, CombinatorialType, TypeClass};
use crate::error::{Error, Result};
use crate::exact::factor::{binomial, factorial};
use crate::exact::{wronskian, Poly, ProjPoint, QMap, QPoly, RationalMap, ZPoly};

/// `f = scale * num / den` with `num`, `den` primitive integer polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegerModel {
    pub num: ZPoly,
    pub den: ZPoly,
    pub scale: BigRational,
}

/// Splits off the contents of numerator and denominator.
pub fn normalize_integer_model(f: &QMap) -> IntegerModel {
    let (num, c1) = f.num().clear_denominators();
    let (den, c2) = f.den().clear_denominators();
    IntegerModel {
        num,
        den,
        scale: c1 / c2,
    }
}

/// A normalized Belyi map tagged with its combinatorial type.
#[derive(Clone, Debug, PartialEq)]
pub struct BelyiMap {
    ctype: CombinatorialType,
    map: QMap,
    model: IntegerModel,
}

impl BelyiMap {
    fn from_integer_parts(ctype: CombinatorialType, num: ZPoly, den: ZPoly) -> Self {
        let map = RationalMap::from_coprime_parts(num.to_rational(), den.to_rational());
        let model = normalize_integer_model(&map);
        let map = RationalMap::from_coprime_parts(
            model.num.to_rational().scale(&model.scale),
            model.den.to_rational(),
        );
        Self { ctype, map, model }
    }

    pub fn ctype(&self) -> &CombinatorialType {
        &self.ctype
    }

    pub fn map(&self) -> &QMap {
        &self.map
    }

    pub fn model(&self) -> &IntegerModel {
        &self.model
    }

    pub fn degree(&self) -> u64 {
        self.ctype.d
    }

    pub fn is_polynomial(&self) -> bool {
        self.map.den().is_constant()
    }

    pub fn verify(&self) -> Certificate {
        verify_map(&self.map, self.ctype.d, self.ctype.indices())
    }

    /// Conjugate by the Möbius map `phi` with `phi(t_i) = t_{sigma(i)}`,
    /// `t = (0, 1, ∞)`. The result has indices `e'_i = e_{sigma(i)}`.
    pub fn relabel(&self, sigma: [usize; 3]) -> Result<BelyiMap> {
        let word = mobius_word(sigma)?;
        let e = self.ctype.indices();
        let ctype = CombinatorialType::from_indices(
            self.ctype.d,
            [e[sigma[0]], e[sigma[1]], e[sigma[2]]],
        );
        let mut f = RationalMap::from_coprime_parts(self.model.num.clone(), self.model.den.clone());
        for m in word {
            f = match m {
                Move::Reciprocal => f.precompose_reciprocal(),
                Move::Reflect => f.precompose_reflection(),
            };
        }
        for m in word {
            f = match m {
                Move::Reciprocal => f.reciprocal(),
                Move::Reflect => f.one_minus(),
            };
        }
        let (num, den) = (f.num().clone(), f.den().clone());
        // Scale is 1 for the input and the Möbius moves have unit
        // coefficients, so the contents agree up to sign.
        Ok(BelyiMap::from_integer_parts(
            ctype,
            num.scale(&self.model.scale.numer().clone()),
            den.scale(&self.model.scale.denom().clone()),
        ))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Move {
    /// `x -> 1/x`: swaps `0` and `∞`.
    Reciprocal,
    /// `x -> 1 - x`: swaps `0` and `1`.
    Reflect,
}

impl Move {
    fn act(self, i: usize) -> usize {
        match (self, i) {
            (Move::Reciprocal, 0) => 2,
            (Move::Reciprocal, 2) => 0,
            (Move::Reflect, 0) => 1,
            (Move::Reflect, 1) => 0,
            (_, i) => i,
        }
    }
}

/// `phi = m_1 ∘ m_2 ∘ ... ∘ m_k` with `phi(t_i) = t_{sigma(i)}`.
fn mobius_word(sigma: [usize; 3]) -> Result<&'static [Move]> {
    use Move::*;
    const WORDS: [&[Move]; 6] = [
        &[],
        &[Reflect],
        &[Reciprocal],
        &[Reflect, Reciprocal, Reflect],
        &[Reciprocal, Reflect],
        &[Reflect, Reciprocal],
    ];
    WORDS
        .into_iter()
        .find(|w| (0..3).all(|i| w.iter().rev().fold(i, |acc, m| m.act(acc)) == sigma[i]))
        .ok_or_else(|| Error::OutOfRange(format!("{sigma:?} is not a permutation of 0..3")))
}

/// Human-readable form of the Möbius map for a permutation.
pub fn mobius_description(sigma: [usize; 3]) -> &'static str {
    match sigma {
        [0, 1, 2] => "x",
        [1, 0, 2] => "1 - x",
        [2, 1, 0] => "1/x",
        [0, 2, 1] => "x/(x - 1)",
        [1, 2, 0] => "1/(1 - x)",
        [2, 0, 1] => "(x - 1)/x",
        _ => "?",
    }
}

fn q(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

/// Numerator of the polynomial map of type `(d; d-k, k+1, d)`, from
/// `f = c x^(d-k) sum_i a_i x^(k-i)` with `a_i = (-1)^(k-i) C(k,i) / (d-i)`
/// and `c = prod_{j=0}^{k} (d-j) / k!`.
pub fn polynomial_closed_form(d: u64, k: u64) -> QPoly {
    let c = (0..=k).fold(BigInt::one(), |acc, j| acc * BigInt::from(d - j));
    let c = BigRational::new(c, factorial(k));
    let mut coeffs = vec![BigRational::zero(); (d + 1) as usize];
    for i in 0..=k {
        let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
        let a = BigRational::new(
            BigInt::from(sign) * binomial(k as i64, i as i64),
            BigInt::from(d - i),
        );
        coeffs[(d - i) as usize] = &c * a;
    }
    Poly::new(coeffs, ())
}

/// Coefficients `c_0..c_k` of `f = x^(d-k) sum_i c_i (x-1)^i`, from the
/// recursion `(d-k+i) c_i + (i+1) c_{i+1} = 0` with `c_0 = f(1) = 1`.
pub fn polynomial_recursion_coefficients(d: u64, k: u64) -> Vec<BigRational> {
    let mut c = vec![BigRational::one()];
    for i in 0..k {
        let next = -(&c[i as usize]) * q(BigInt::from(d - k + i)) / q(BigInt::from(i + 1));
        c.push(next);
    }
    c
}

/// The same numerator expanded from the recursion coefficients.
pub fn polynomial_by_recursion(d: u64, k: u64) -> QPoly {
    let x_minus_1 = QPoly::from_i64s(&[-1, 1]);
    let mut acc = QPoly::zero(());
    for c in polynomial_recursion_coefficients(d, k).iter().rev() {
        acc = &(&acc * &x_minus_1) + &QPoly::constant(c.clone());
    }
    acc.shift((d - k) as usize)
}

/// The normalized map of type `(d; d-k, k+1, d)`.
pub fn build_polynomial(d: u64, k: u64) -> Result<BelyiMap> {
    if k < 1 || k + 2 > d {
        return Err(Error::OutOfRange(format!(
            "polynomial family needs 1 <= k <= d - 2, got d = {d}, k = {k}"
        )));
    }
    let ctype = CombinatorialType::new(d, d - k, k + 1, d)?;
    let closed = polynomial_closed_form(d, k);
    let recursive = polynomial_by_recursion(d, k);
    if closed != recursive {
        return Err(Error::InternalInconsistency(format!(
            "closed form and recursion disagree for d = {d}, k = {k}"
        )));
    }
    let (num, scale) = closed.clear_denominators();
    let num = num.scale(&scale.to_integer());
    debug_assert!(scale.is_integer());
    Ok(BelyiMap::from_integer_parts(ctype, num, ZPoly::one(())))
}

/// `a_i` for the symmetric family in product form,
/// `C(k,i) prod_{j=k+i+1}^{2k} (d-j) prod_{j=0}^{i-1} (d-j)`.
pub fn symmetric_coefficient_product(d: u64, k: u64, i: u64) -> BigInt {
    let upper = ((k + i + 1)..=(2 * k)).fold(BigInt::one(), |acc, j| acc * (d as i64 - j as i64));
    let lower = (0..i).fold(BigInt::one(), |acc, j| acc * (d as i64 - j as i64));
    binomial(k as i64, i as i64) * upper * lower
}

/// `a_i = k! C(d, i) C(d-k-i-1, k-i)`.
pub fn symmetric_coefficient_binomial(d: u64, k: u64, i: u64) -> BigInt {
    factorial(k)
        * binomial(d as i64, i as i64)
        * binomial(d as i64 - k as i64 - i as i64 - 1, k as i64 - i as i64)
}

/// The normalized map of type `(d; d-k, 2k+1, d-k)`:
/// `x^(d-k) sum_i (-1)^(k-i) a_(k-i) x^i / sum_j (-1)^j a_j x^j`.
pub fn build_symmetric(d: u64, k: u64) -> Result<BelyiMap> {
    if k < 1 || d < 2 * k + 1 || d < k + 2 {
        return Err(Error::OutOfRange(format!(
            "symmetric family needs k >= 1, d >= 2k + 1 and d - k >= 2, got d = {d}, k = {k}"
        )));
    }
    let ctype = CombinatorialType::new(d, d - k, 2 * k + 1, d - k)?;
    let mut a = Vec::with_capacity(k as usize + 1);
    for i in 0..=k {
        let p = symmetric_coefficient_product(d, k, i);
        let b = symmetric_coefficient_binomial(d, k, i);
        if p != b {
            return Err(Error::InternalInconsistency(format!(
                "symmetric coefficient a_{i} disagrees for d = {d}, k = {k}: {p} vs {b}"
            )));
        }
        a.push(p);
    }
    let signed = |i: u64, v: &BigInt| if i % 2 == 0 { v.clone() } else { -v };
    let top: Vec<BigInt> = (0..=k).map(|i| signed(k - i, &a[(k - i) as usize])).collect();
    let f1 = ZPoly::new(top, ());
    let den = ZPoly::new((0..=k).map(|j| signed(j, &a[j as usize])).collect(), ());
    if f1.reversed(k as usize) != den {
        return Err(Error::InternalInconsistency(format!(
            "reversal symmetry fails for d = {d}, k = {k}"
        )));
    }
    let num = f1.shift((d - k) as usize);
    Ok(BelyiMap::from_integer_parts(ctype, num, den))
}

/// A constructed map together with how it relates to the requested type.
#[derive(Clone, Debug)]
pub struct Construction {
    pub requested: CombinatorialType,
    pub classification: Classification,
    /// Map of the family pattern, in the pattern's coordinates.
    pub map: BelyiMap,
}

impl Construction {
    /// The normalized map of exactly the requested type.
    pub fn into_normalized(self) -> Result<BelyiMap> {
        if self.classification.is_direct() {
            return Ok(self.map);
        }
        let m = self.map.relabel(self.classification.sigma)?;
        debug_assert_eq!(m.ctype, self.requested);
        Ok(m)
    }
}

/// Builds the family map matching `t`, without relabeling.
pub fn build(t: &CombinatorialType) -> Result<Construction> {
    let classification = classify(t);
    let map = match classification.class {
        TypeClass::Polynomial { k } => build_polynomial(t.d, k)?,
        TypeClass::Symmetric { k } => build_symmetric(t.d, k)?,
        TypeClass::GeneralUnsupported => return Err(Error::Unsupported(*t)),
    };
    Ok(Construction {
        requested: *t,
        classification,
        map,
    })
}

/// The normalized map of exactly type `t`, relabeling if needed.
pub fn build_normalized(t: &CombinatorialType) -> Result<BelyiMap> {
    build(t)?.into_normalized()
}

/// One named check of a [`Certificate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Result of [`verify_map`]: every check with its outcome.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub checks: Vec<Check>,
    /// Wronskian of the integer model.
    #[serde(skip)]
    pub wronskian: ZPoly,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Exact check that `f` is the normalized Belyi map with degree `d` and
/// ramification indices `e` over `0, 1, ∞`.
///
/// Ramification is certified by dividing the Wronskian of the integer
/// model by `x^(e1-1) (x-1)^(e2-1)` and requiring a nonzero constant; with
/// `deg num = d` and `deg den = d - e3` this accounts for all `2d - 2`
/// ramification by Riemann-Hurwitz.
pub fn verify_map(f: &QMap, d: u64, e: [u64; 3]) -> Certificate {
    let mut checks = Vec::new();
    let mut check = |name, passed, detail: String| checks.push(Check { name, passed, detail });
    let qp = |n: i64| ProjPoint::Finite(BigRational::from_integer(n.into()));

    let at0 = f.eval(&qp(0));
    check("fixes 0", at0 == qp(0), format!("f(0) = {at0}"));
    let at1 = f.eval(&qp(1));
    check("fixes 1", at1 == qp(1), format!("f(1) = {at1}"));
    let atinf = f.eval(&ProjPoint::Infinity);
    check("fixes infinity", atinf.is_infinity(), format!("f(inf) = {atinf}"));

    let model = normalize_integer_model(f);
    let dn = model.num.degree_or_zero() as u64;
    let dd = model.den.degree_or_zero() as u64;
    let want_dd = d.checked_sub(e[2]);
    check(
        "degrees",
        dn == d && Some(dd) == want_dd,
        format!("deg num = {dn} (want {d}), deg den = {dd} (want d - e3)"),
    );

    let g = model.num.primitive_gcd(&model.den);
    check(
        "coprime",
        g.degree() == Some(0),
        format!("gcd degree {:?}", g.degree()),
    );

    let w = wronskian(&model.num, &model.den);
    let (shape_ok, detail) = if e[0] == 0 || e[1] == 0 || w.is_zero() {
        (false, "zero wronskian or zero index".to_string())
    } else {
        let shape = &QPoly::from_i64s(&[0, 1]).pow((e[0] - 1) as u32)
            * &QPoly::from_i64s(&[-1, 1]).pow((e[1] - 1) as u32);
        match w.to_rational().exact_div(&shape) {
            Some(qt) if qt.degree() == Some(0) => (true, format!("wronskian = {} * x^{} (x-1)^{}", qt.coeff(0), e[0] - 1, e[1] - 1)),
            Some(qt) => (false, format!("extra ramification: cofactor of degree {:?}", qt.degree())),
            None => (false, format!("wronskian not divisible by x^{} (x-1)^{}", e[0] - 1, e[1] - 1)),
        }
    };
    check("ramification", shape_ok, detail);

    let primitive = model.num.content().is_ok_and(|c| c.is_one())
        && model.den.content().is_ok_and(|c| c.is_one());
    check(
        "primitive model with scale 1",
        primitive && model.scale.is_one(),
        format!("scale = {}", model.scale),
    );

    Certificate { checks, wronskian: w }
}

/// `f(1/x) = 1/f(x)` as rational functions.
pub fn commutes_with_reciprocal(f: &QMap) -> bool {
    let lhs = f.precompose_reciprocal();
    let rhs = f.reciprocal();
    // Cross-multiplied equality of the two fractions.
    &lhs.num().clone() * rhs.den() == &rhs.num().clone() * lhs.den()
}

/// Sign of the leading coefficient of the numerator, for display.
pub fn leading_sign(p: &ZPoly) -> i32 {
    match p.lead() {
        Some(l) if l.is_negative() => -1,
        Some(_) => 1,
        None => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::enumerate_types;
    use crate::render::{render_q_map, TermOrder};

    fn t(d: u64, e1: u64, e2: u64, e3: u64) -> CombinatorialType {
        CombinatorialType::new(d, e1, e2, e3).unwrap()
    }

    fn show(f: &BelyiMap) -> String {
        render_q_map(f.map(), TermOrder::Descending)
    }

    #[test]
    fn polynomial_examples() {
        assert_eq!(show(&build_polynomial(3, 1).unwrap()), "-2x^3+3x^2");
        assert_eq!(show(&build_polynomial(4, 1).unwrap()), "-3x^4+4x^3");
        let f = build_polynomial(5, 2).unwrap();
        assert_eq!(show(&f), "6x^5-15x^4+10x^3");
        // f' = 30 x^2 (x - 1)^2
        let want = ZPoly::from_i64s(&[0, 0, 30, -60, 30]);
        assert_eq!(f.model().num.derivative(), want);
        assert!(build_polynomial(5, 4).is_err());
        assert!(build_polynomial(5, 0).is_err());
    }

    #[test]
    fn recursion_coefficients_are_binomials() {
        for d in 3..20u64 {
            for k in 1..=d - 2 {
                let c = polynomial_recursion_coefficients(d, k);
                for (i, ci) in c.iter().enumerate() {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    let want = binomial((d - k) as i64 + i as i64 - 1, i as i64) * sign;
                    assert_eq!(ci, &q(want));
                }
            }
        }
    }

    #[test]
    fn symmetric_examples() {
        let f = build_symmetric(3, 1).unwrap();
        assert_eq!(show(&f), "(x^3-3x^2)/(-3x+1)");
        let f = build_symmetric(5, 2).unwrap();
        assert_eq!(show(&f), "(x^5-5x^4+10x^3)/(10x^2-5x+1)");
        let f = build_symmetric(4, 1).unwrap();
        assert_eq!(show(&f), "(x^4-2x^3)/(-2x+1)");
        assert!(f.verify().passed());
        assert!(build_symmetric(4, 2).is_err());
    }

    #[test]
    fn certificates() {
        let c = build_polynomial(3, 1).unwrap().verify();
        assert!(c.passed(), "{c:?}");
        assert_eq!(c.wronskian, ZPoly::from_i64s(&[0, 6, -6]));
        let c = build_symmetric(3, 1).unwrap().verify();
        assert!(c.passed(), "{c:?}");
        // -6 x (x - 1)^2
        assert_eq!(c.wronskian, ZPoly::from_i64s(&[0, -6, 12, -6]));
        let f = build_polynomial(4, 1).unwrap();
        let bad = verify_map(f.map(), 4, [3, 3, 4]);
        assert!(!bad.passed());
        assert_eq!(bad.failures().map(|c| c.name).collect::<Vec<_>>(), vec!["ramification"]);
    }

    #[test]
    fn integer_models() {
        let f = RationalMap::new(QPoly::from_i64s(&[0, 0, 1, 0, 2]), QPoly::from_i64s(&[2, 0, 1]));
        let m = normalize_integer_model(&f);
        assert_eq!(m.num, ZPoly::from_i64s(&[0, 0, 1, 0, 2]));
        assert_eq!(m.den, ZPoly::from_i64s(&[2, 0, 1]));
        assert!(m.scale.is_one());
        let half = BigRational::new(1.into(), 2.into());
        let g = RationalMap::new(QPoly::from_i64s(&[0, 1]).scale(&half), QPoly::from_i64s(&[1, 1]));
        let m = normalize_integer_model(&g);
        assert_eq!(m.num, ZPoly::from_i64s(&[0, 1]));
        assert_eq!(m.den, ZPoly::from_i64s(&[1, 1]));
        assert_eq!(m.scale, half);
    }

    #[test]
    fn build_dispatch() {
        let c = build(&t(15, 13, 3, 15)).unwrap();
        assert!(c.classification.is_direct());
        let w = c.map.verify().wronskian;
        assert_eq!(w.x_valuation(), Some(12));
        assert_eq!(build(&t(3, 2, 3, 2)).unwrap().map, build_symmetric(3, 1).unwrap());
        assert!(matches!(build(&t(7, 4, 5, 6)), Err(Error::Unsupported(_))));
    }

    #[test]
    fn symmetric_maps_commute_with_reciprocal() {
        for d in 3..=20 {
            for k in 1..=(d - 1) / 2 {
                if d < k + 2 {
                    continue;
                }
                let f = build_symmetric(d, k).unwrap();
                assert!(commutes_with_reciprocal(f.map()), "d = {d}, k = {k}");
            }
        }
    }

    #[test]
    fn every_ordering_is_built_and_certified() {
        for d in 3..=12 {
            for sorted in enumerate_types(d).unwrap() {
                for ty in sorted.orderings() {
                    match build_normalized(&ty) {
                        Ok(f) => {
                            assert_eq!(f.ctype(), &ty);
                            let c = f.verify();
                            assert!(c.passed(), "{ty}: {:?}", c.failures().collect::<Vec<_>>());
                        }
                        Err(Error::Unsupported(_)) => {}
                        Err(e) => panic!("{ty}: {e}"),
                    }
                }
            }
        }
    }

    #[test]
    fn relabeling_words_realize_their_permutations() {
        for sigma in crate::combinatorics::PERMUTATIONS {
            let w = mobius_word(sigma).unwrap();
            for i in 0..3 {
                assert_eq!(w.iter().rev().fold(i, |acc, m| m.act(acc)), sigma[i]);
            }
        }
        assert!(mobius_word([0, 0, 1]).is_err());
    }
}
