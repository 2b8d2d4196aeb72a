//! Rational roots of integer polynomials via the rational root theorem.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::factor::{divisors, FactorConfig};
use super::poly::ZPoly;
use crate::error::{Error, Result};

/// All rational roots of a nonzero integer polynomial, without multiplicity,
/// in ascending order.
///
/// The power of `x` is stripped first; the remaining candidates are
/// `±u/v` with `u | a_0` and `v | a_n`, each tested by exact homogeneous
/// evaluation.
pub fn rational_roots(p: &ZPoly, config: FactorConfig) -> Result<Vec<BigRational>> {
    let Some(low) = p.x_valuation() else {
        return Err(Error::ZeroPolynomial);
    };
    let mut roots = BTreeSet::new();
    if low > 0 {
        roots.insert(BigRational::zero());
    }
    let q = ZPoly::new(p.coeffs()[low..].to_vec(), ());
    if q.degree() == Some(0) {
        return Ok(roots.into_iter().collect());
    }
    let constant = q.coeff(0);
    let lead = q.lead().expect("nonzero").clone();
    let nums = divisors(&constant, config)?;
    let dens = divisors(&lead, config)?;

    for v in &dens {
        for u in &nums {
            if !u.gcd(v).is_one() {
                continue;
            }
            for u in [u.clone(), -u] {
                if q.eval_homogeneous(&u, v).is_zero() {
                    roots.insert(BigRational::new(u, v.clone()));
                }
            }
        }
    }
    Ok(roots.into_iter().collect())
}

/// Convenience wrapper with the default factorization bound.
pub fn rational_roots_default(p: &ZPoly) -> Result<Vec<BigRational>> {
    rational_roots(p, FactorConfig::default())
}

/// `true` if `p(x) = 0` at the rational `x`.
pub fn is_root(p: &ZPoly, x: &BigRational) -> bool {
    if p.is_zero() {
        return true;
    }
    p.eval_homogeneous(x.numer(), x.denom()).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(big(n), big(d))
    }

    #[test]
    fn difference_of_squares() {
        let p = ZPoly::from_i64s(&[-1, 0, 1]);
        assert_eq!(rational_roots_default(&p).unwrap(), vec![q(-1, 1), q(1, 1)]);
    }

    #[test]
    fn fixed_points_of_the_cubic_family() {
        // -2x^3 + 3x^2 - x
        let p = ZPoly::from_i64s(&[0, -1, 3, -2]);
        assert_eq!(
            rational_roots_default(&p).unwrap(),
            vec![q(0, 1), q(1, 2), q(1, 1)]
        );
    }

    #[test]
    fn zero_fiber_of_the_quartic_family() {
        let p = ZPoly::from_i64s(&[0, 0, 0, 4, -3]);
        assert_eq!(rational_roots_default(&p).unwrap(), vec![q(0, 1), q(4, 3)]);
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        assert!(rational_roots_default(&ZPoly::zero(())).is_err());
    }

    #[test]
    fn incomplete_factorization_propagates() {
        let big_semiprime: BigInt = big(1_000_000_007) * big(1_000_000_009);
        let p = ZPoly::new(vec![big_semiprime, big(0), big(1)], ());
        let err = rational_roots(&p, FactorConfig::with_trial_bound(100)).unwrap_err();
        assert!(matches!(err, Error::IncompleteFactorization { .. }));
    }
}
