//! Canonical text for polynomials and maps, as in `x^15+x^14+x^13`.

use std::fmt::Display;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{FpMap, FpPoly, QMap, QPoly, ZPoly};

/// Exponent order of rendered terms.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TermOrder {
    #[default]
    Descending,
    Ascending,
}

fn monomial(e: usize) -> String {
    match e {
        0 => String::new(),
        1 => "x".to_string(),
        _ => format!("x^{e}"),
    }
}

/// Joins `(negative, |coefficient|, exponent)` terms. A unit coefficient is
/// dropped except on the constant term.
fn join_terms(terms: impl Iterator<Item = (bool, String, bool, usize)>, order: TermOrder) -> String {
    let mut terms: Vec<_> = terms.collect();
    if order == TermOrder::Descending {
        terms.reverse();
    }
    let mut out = String::new();
    for (i, (neg, mag, unit, e)) in terms.into_iter().enumerate() {
        if neg {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        let m = monomial(e);
        if !unit || m.is_empty() {
            out.push_str(&mag);
        }
        out.push_str(&m);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Coefficients in `[0, p)`, all terms joined with `+`.
pub fn render_fp_poly(p: &FpPoly, order: TermOrder) -> String {
    let terms = p.coeffs().iter().enumerate().filter(|(_, c)| c.value() != 0).map(|(e, c)| {
        (false, c.value().to_string(), c.value() == 1, e)
    });
    join_terms(terms, order)
}

/// Signed integer coefficients: `-2x^3+3x^2`.
pub fn render_z_poly(p: &ZPoly, order: TermOrder) -> String {
    let terms = p.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(e, c)| {
        let mag: BigInt = c.abs();
        (c.is_negative(), mag.to_string(), mag.is_one(), e)
    });
    join_terms(terms, order)
}

/// Signed rational coefficients; non-integers are parenthesized, `(3/2)x^2`.
pub fn render_q_poly(p: &QPoly, order: TermOrder) -> String {
    let terms = p.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(e, c)| {
        let mag: BigRational = c.abs();
        let text = if mag.is_integer() { mag.to_string() } else { format!("({mag})") };
        (c.is_negative(), text, mag.is_one(), e)
    });
    join_terms(terms, order)
}

fn fraction(num: String, den: String, den_is_one: bool) -> String {
    if den_is_one {
        num
    } else {
        format!("({num})/({den})")
    }
}

/// `num` alone when the denominator is 1, otherwise `(num)/(den)`.
pub fn render_fp_map(f: &FpMap, order: TermOrder) -> String {
    let f = f.with_monic_den();
    let den_one = f.den().degree() == Some(0);
    fraction(render_fp_poly(f.num(), order), render_fp_poly(f.den(), order), den_one)
}

/// A map over `Q` through its integer model, with a leading scale factor
/// only when it differs from 1.
pub fn render_q_map(f: &QMap, order: TermOrder) -> String {
    let (num, c1) = f.num().clear_denominators();
    let (den, c2) = f.den().clear_denominators();
    let c = c1 / c2;
    // Move the sign of a constant denominator into the numerator.
    let (num, den) = if den.degree() == Some(0) && den.coeff(0).is_negative() {
        (-&num, -&den)
    } else {
        (num, den)
    };
    let body = fraction(render_z_poly(&num, order), render_z_poly(&den, order), den.coeffs() == [BigInt::one()]);
    if c.is_one() {
        body
    } else {
        format!("{}*{}", paren(&c), if body.starts_with('(') { body } else { format!("({body})") })
    }
}

fn paren(c: &impl Display) -> String {
    format!("({c})")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Fp, Poly, PrimeModulus, RationalMap};

    fn fp(coeffs: &[u64], p: u64) -> FpPoly {
        let m = PrimeModulus::new(p).unwrap();
        Poly::new(coeffs.iter().map(|&c| Fp::new(c, m)).collect(), m)
    }

    #[test]
    fn prime_field_strings() {
        let mut c = vec![0; 16];
        c[15] = 2;
        c[12] = 2;
        assert_eq!(render_fp_poly(&fp(&c, 3), TermOrder::Descending), "2x^15+2x^12");
        assert_eq!(render_fp_poly(&fp(&c, 3), TermOrder::Ascending), "2x^12+2x^15");
        assert_eq!(render_fp_poly(&fp(&[1, 1], 2), TermOrder::Descending), "x+1");
        assert_eq!(render_fp_poly(&fp(&[0], 2), TermOrder::Descending), "0");
    }

    #[test]
    fn integer_strings() {
        let p = ZPoly::from_i64s(&[0, 0, 3, -2]);
        assert_eq!(render_z_poly(&p, TermOrder::Descending), "-2x^3+3x^2");
        assert_eq!(render_z_poly(&ZPoly::from_i64s(&[-1, 1]), TermOrder::Descending), "x-1");
        assert_eq!(render_z_poly(&ZPoly::from_i64s(&[1, -3]), TermOrder::Descending), "-3x+1");
    }

    #[test]
    fn map_strings() {
        let f = RationalMap::new(QPoly::from_i64s(&[0, 0, -3, 1]), QPoly::from_i64s(&[1, -3]));
        assert_eq!(render_q_map(&f, TermOrder::Descending), "(x^3-3x^2)/(-3x+1)");
        let g = RationalMap::polynomial(QPoly::from_i64s(&[0, 0, 3, -2]));
        assert_eq!(render_q_map(&g, TermOrder::Descending), "-2x^3+3x^2");
        let h = RationalMap::new(QPoly::from_i64s(&[0, 1]), QPoly::from_i64s(&[2, 2]));
        assert_eq!(render_q_map(&h, TermOrder::Descending), "(1/2)*(x)/(x+1)");
        assert_eq!(render_q_poly(&QPoly::from_i64s(&[1, 2]).scale(&BigRational::new(1.into(), 2.into())), TermOrder::Descending), "x+(1/2)");
    }
}
