//! Integer factorization by trial division, for rational-root enumeration.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Cofactors up to this size are always finished by exhaustive trial
/// division, whatever the configured bound.
pub const FALLBACK_LIMIT: u64 = 1_000_000_000_000;

/// Limits for [`factorize`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorConfig {
    /// Trial divisors are tried up to this bound.
    pub trial_bound: u64,
}

impl Default for FactorConfig {
    fn default() -> Self {
        Self {
            trial_bound: 1_000_000,
        }
    }
}

impl FactorConfig {
    pub fn with_trial_bound(trial_bound: u64) -> Self {
        Self {
            trial_bound: trial_bound.max(2),
        }
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in SMALL {
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

/// `p`-adic valuation of a positive integer.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    assert!(n > 0 && p > 1);
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Splits `n` as `smooth * rest`, pulling out every divisor below `limit`
/// with `d * d <= n` and pushing the prime powers found onto `out`.
/// Returns the cofactor and whether it is certainly 1 or prime.
fn trial_divide_u64(mut n: u64, start: u64, limit: u64, out: &mut Vec<(BigUint, u32)>) -> (u64, bool) {
    let mut d = start;
    while d <= limit {
        if d.checked_mul(d).map_or(true, |sq| sq > n) {
            return (n, true);
        }
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((BigUint::from(d), e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    (n, n == 1)
}

/// Prime factorization of a positive integer.
///
/// Trial division runs up to `config.trial_bound`. A leftover cofactor below
/// the square of the bound is prime; one up to [`FALLBACK_LIMIT`] is finished
/// by exhaustive trial division; a larger one is accepted only if it fits in
/// 64 bits and passes deterministic Miller-Rabin. Anything else is an
/// [`Error::IncompleteFactorization`].
pub fn factorize(n: &BigUint, config: FactorConfig) -> Result<Vec<(BigUint, u32)>> {
    assert!(!n.is_zero(), "factorization of zero");
    let mut out = Vec::new();
    let mut rest = n.clone();
    let bound = config.trial_bound.max(2);
    let mut d: u64 = 2;
    let mut finished = false;

    while d <= bound {
        if let Some(small) = rest.to_u64() {
            let (r, done) = trial_divide_u64(small, d, bound, &mut out);
            rest = BigUint::from(r);
            finished = done;
            break;
        }
        if (&rest % d).is_zero() {
            let mut e = 0;
            while (&rest % d).is_zero() {
                rest /= d;
                e += 1;
            }
            out.push((BigUint::from(d), e));
        }
        d += if d == 2 { 1 } else { 2 };
    }

    if !rest.is_one() {
        let b = BigUint::from(bound);
        let certain = finished || rest < &b * &b;
        if !certain {
            match rest.to_u64() {
                Some(r) if r <= FALLBACK_LIMIT => {
                    let start = bound + 1 + (bound % 2);
                    let (r2, _) = trial_divide_u64(r, start.max(3), r, &mut out);
                    rest = BigUint::from(r2);
                }
                Some(r) if is_prime_u64(r) => {}
                _ => {
                    return Err(Error::IncompleteFactorization {
                        cofactor: rest.to_string(),
                    })
                }
            }
        }
        if !rest.is_one() {
            out.push((rest, 1));
        }
    }
    out.sort();
    Ok(out)
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: &BigInt, config: FactorConfig) -> Result<Vec<BigInt>> {
    let mag = n.magnitude();
    let factors = factorize(mag, config)?;
    let mut divs = vec![BigUint::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut q = d.clone();
            next.push(q.clone());
            for _ in 0..e {
                q *= &p;
                next.push(q.clone());
            }
        }
        divs = next;
    }
    divs.sort();
    Ok(divs.into_iter().map(BigInt::from).collect())
}

/// Binomial coefficient as an exact integer; zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `n!`.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_is_prime(n: u64) -> bool {
        n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn miller_rabin_matches_trial_division() {
        for n in 0..5000 {
            assert_eq!(is_prime_u64(n), brute_is_prime(n), "n = {n}");
        }
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1_000_000_007 * 3));
        assert!(is_prime_u64(18_446_744_073_709_551_557));
    }

    #[test]
    fn factorizes_binomials() {
        let n = BigUint::from(916_312_070_471_295_267u64); // C(63, 31)
        let f = factorize(&n, FactorConfig::default()).unwrap();
        let back = f
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e));
        assert_eq!(back, n);
        assert!(f.iter().all(|(p, _)| p <= &BigUint::from(63u32)));
    }

    #[test]
    fn small_bound_falls_back_below_limit() {
        // 999_983 * 999_979, both prime, with a tiny trial bound.
        let n = BigUint::from(999_983u64 * 999_979u64);
        let f = factorize(&n, FactorConfig::with_trial_bound(10)).unwrap();
        assert_eq!(
            f,
            vec![(BigUint::from(999_979u32), 1), (BigUint::from(999_983u32), 1)]
        );
    }

    #[test]
    fn large_composite_cofactor_is_an_error() {
        // Product of two primes just above 10^9 with a small bound.
        let p = 1_000_000_007u64;
        let q = 1_000_000_009u64;
        let n = BigUint::from(p) * BigUint::from(q);
        let err = factorize(&n, FactorConfig::with_trial_bound(1000)).unwrap_err();
        assert!(matches!(err, Error::IncompleteFactorization { .. }));
        // A large prime cofactor is certified instead.
        let f = factorize(&BigUint::from(p * 4), FactorConfig::with_trial_bound(3)).unwrap();
        assert_eq!(f, vec![(BigUint::from(2u32), 2), (BigUint::from(p), 1)]);
    }

    #[test]
    fn divisor_lists() {
        let d = divisors(&BigInt::from(-12), FactorConfig::default()).unwrap();
        let want: Vec<BigInt> = [1, 2, 3, 4, 6, 12].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(d, want);
        assert_eq!(divisors(&BigInt::from(1), FactorConfig::default()).unwrap(), vec![BigInt::one()]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(63, 31), BigInt::from(916_312_070_471_295_267u64));
        assert_eq!(binomial(3, 4), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(factorial(5), BigInt::from(120));
    }
}
