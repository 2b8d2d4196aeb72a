//! Genus-0 single-cycle combinatorial types `(d; e1, e2, e3)`.
//!
//! `e1`, `e2`, `e3` are the ramification indices over `0`, `1` and `∞`.
//! A type is valid when `2 <= e_i <= d` and `e1 + e2 + e3 = 2d + 1`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest degree accepted anywhere in the crate.
pub const MAX_DEGREE: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CombinatorialType {
    pub d: u64,
    pub e1: u64,
    pub e2: u64,
    pub e3: u64,
}

impl CombinatorialType {
    /// Checks both invariants and the configured degree bound.
    pub fn new(d: u64, e1: u64, e2: u64, e3: u64) -> Result<Self> {
        let invalid = |reason: String| Error::InvalidType {
            d,
            e1,
            e2,
            e3,
            reason,
        };
        if d < 3 {
            return Err(invalid("degree must be at least 3".into()));
        }
        if d > MAX_DEGREE {
            return Err(invalid(format!("degree exceeds the bound {MAX_DEGREE}")));
        }
        for (name, e) in [("e1", e1), ("e2", e2), ("e3", e3)] {
            if e < 2 || e > d {
                return Err(invalid(format!("{name} = {e} violates 2 <= e_i <= d")));
            }
        }
        let sum = e1 + e2 + e3;
        if sum != 2 * d + 1 {
            return Err(invalid(format!(
                "genus-0 condition fails: e1 + e2 + e3 = {sum} != 2d + 1 = {}",
                2 * d + 1
            )));
        }
        Ok(Self { d, e1, e2, e3 })
    }

    pub fn indices(&self) -> [u64; 3] {
        [self.e1, self.e2, self.e3]
    }

    /// The type with the indices placed at the points in the given order.
    pub(crate) fn from_indices(d: u64, e: [u64; 3]) -> Self {
        Self {
            d,
            e1: e[0],
            e2: e[1],
            e3: e[2],
        }
    }

    /// Sorted representative `e1 <= e2 <= e3`.
    pub fn sorted(&self) -> Self {
        let mut e = self.indices();
        e.sort_unstable();
        Self::from_indices(self.d, e)
    }

    /// All distinct reorderings of the indices, in lexicographic order.
    pub fn orderings(&self) -> Vec<Self> {
        let e = self.indices();
        let mut out: Vec<Self> = PERMUTATIONS
            .iter()
            .map(|p| Self::from_indices(self.d, [e[p[0]], e[p[1]], e[p[2]]]))
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for CombinatorialType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {}, {}, {})", self.d, self.e1, self.e2, self.e3)
    }
}

pub(crate) const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

fn check_degree(d: u64, min: u64) -> Result<()> {
    if d < min {
        return Err(Error::InvalidDegree {
            d,
            reason: if min == 3 {
                "degree must be at least 3"
            } else {
                "degree must be at least 4"
            },
        });
    }
    if d > MAX_DEGREE {
        return Err(Error::InvalidDegree {
            d,
            reason: "degree exceeds the configured bound",
        });
    }
    Ok(())
}

/// Every type of degree `d` with `e1 <= e2 <= e3`, in lexicographic order.
pub fn enumerate_types(d: u64) -> Result<Vec<CombinatorialType>> {
    check_degree(d, 3)?;
    let mut out = Vec::new();
    for e1 in 2..=d {
        for e2 in e1..=d {
            let Some(e3) = (2 * d + 1).checked_sub(e1 + e2) else {
                continue;
            };
            if e3 >= e2 && e3 <= d {
                out.push(CombinatorialType { d, e1, e2, e3 });
            }
        }
    }
    Ok(out)
}

/// `N(d) = (d^2 + 4d - c) / 12`, with `c` depending on `d mod 6`.
pub fn count_closed_form(d: u64) -> Result<u64> {
    check_degree(d, 3)?;
    let c = match d % 6 {
        1 => 5,
        4 => 8,
        3 | 5 => 9,
        _ => 12,
    };
    let num = d * d + 4 * d - c;
    debug_assert_eq!(num % 12, 0);
    Ok(num / 12)
}

/// Types with `e3 = d`: `floor((d - 1) / 2)`.
pub fn count_polynomial(d: u64) -> Result<u64> {
    check_degree(d, 3)?;
    Ok((d - 1) / 2)
}

/// Types with `e3 < d`: `sum_{i=1}^{floor((d-1)/3)} floor((d + 1 - 3i) / 2)`.
pub fn count_nonpolynomial(d: u64) -> Result<u64> {
    check_degree(d, 4)?;
    Ok((1..=(d - 1) / 3).map(|i| (d + 1 - 3 * i) / 2).sum())
}

/// Which explicit construction covers a type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum TypeClass {
    /// Some ordering is `(d - k, k + 1, d)`.
    Polynomial { k: u64 },
    /// Some ordering is `(d - k, 2k + 1, d - k)`.
    Symmetric { k: u64 },
    GeneralUnsupported,
}

/// How a type relates to the family pattern it was matched against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Classification {
    pub class: TypeClass,
    /// The family pattern in its own coordinates (equal to the input when
    /// the match needs no relabeling).
    pub pattern: Option<CombinatorialType>,
    /// `sigma` with `e_i = pattern_{sigma(i)}`; identity for a direct match.
    pub sigma: [usize; 3],
}

impl Classification {
    pub fn is_direct(&self) -> bool {
        self.sigma == [0, 1, 2]
    }
}

fn polynomial_pattern(d: u64, k: u64) -> [u64; 3] {
    [d - k, k + 1, d]
}

fn symmetric_pattern(d: u64, k: u64) -> [u64; 3] {
    [d - k, 2 * k + 1, d - k]
}

fn polynomial_k(t: &CombinatorialType, e: [u64; 3]) -> Option<u64> {
    let k = t.d.checked_sub(e[0])?;
    (k >= 1 && polynomial_pattern(t.d, k) == e).then_some(k)
}

fn symmetric_k(t: &CombinatorialType, e: [u64; 3]) -> Option<u64> {
    let k = t.d.checked_sub(e[0])?;
    (k >= 1 && symmetric_pattern(t.d, k) == e).then_some(k)
}

/// Classifies a valid type.
///
/// A match in the given positions is preferred, polynomial before symmetric;
/// otherwise a reordering matching the polynomial pattern, then the
/// symmetric one, taking the smallest `k` when several reorderings match.
pub fn classify(t: &CombinatorialType) -> Classification {
    let e = t.indices();
    type Matcher = fn(&CombinatorialType, [u64; 3]) -> Option<u64>;
    let matchers: [(Matcher, fn(u64) -> TypeClass, fn(u64, u64) -> [u64; 3]); 2] = [
        (polynomial_k, |k| TypeClass::Polynomial { k }, polynomial_pattern),
        (symmetric_k, |k| TypeClass::Symmetric { k }, symmetric_pattern),
    ];
    for (matcher, class, pattern) in matchers {
        if let Some(k) = matcher(t, e) {
            return Classification {
                class: class(k),
                pattern: Some(CombinatorialType::from_indices(t.d, pattern(t.d, k))),
                sigma: [0, 1, 2],
            };
        }
    }
    for (matcher, class, pattern) in matchers {
        // Several orderings can match; the smallest k has the fewest terms.
        let best = PERMUTATIONS
            .iter()
            .filter_map(|perm| {
                // Reordered indices r with r_j = e_{perm[j]}; then
                // e_i = r_{sigma(i)} where sigma is the inverse of perm.
                let r = [e[perm[0]], e[perm[1]], e[perm[2]]];
                matcher(t, r).map(|k| (k, perm))
            })
            .min_by_key(|(k, _)| *k);
        if let Some((k, perm)) = best {
            let mut sigma = [0; 3];
            for (j, &i) in perm.iter().enumerate() {
                sigma[i] = j;
            }
            return Classification {
                class: class(k),
                pattern: Some(CombinatorialType::from_indices(t.d, pattern(t.d, k))),
                sigma,
            };
        }
    }
    Classification {
        class: TypeClass::GeneralUnsupported,
        pattern: None,
        sigma: [0, 1, 2],
    }
}

/// Shorthand for `classify(t).class`.
pub fn classify_type(t: &CombinatorialType) -> TypeClass {
    classify(t).class
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(d: u64, e1: u64, e2: u64, e3: u64) -> CombinatorialType {
        CombinatorialType::new(d, e1, e2, e3).unwrap()
    }

    fn brute_force(d: u64) -> Vec<CombinatorialType> {
        let mut out = Vec::new();
        for e1 in 0..=d + 1 {
            for e2 in 0..=d + 1 {
                for e3 in 0..=d + 1 {
                    if e1 <= e2 && e2 <= e3 {
                        if let Ok(ty) = CombinatorialType::new(d, e1, e2, e3) {
                            out.push(ty);
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn validate_examples() {
        assert!(CombinatorialType::new(3, 2, 2, 3).is_ok());
        assert!(CombinatorialType::new(15, 13, 3, 15).is_ok());
        let err = CombinatorialType::new(4, 2, 2, 4).unwrap_err();
        assert!(err.to_string().contains("2d + 1"), "{err}");
        let err = CombinatorialType::new(5, 1, 5, 5).unwrap_err();
        assert!(err.to_string().contains("e1"), "{err}");
        assert!(CombinatorialType::new(2, 2, 2, 1).is_err());
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_types(3).unwrap(), vec![t(3, 2, 2, 3)]);
        assert_eq!(enumerate_types(4).unwrap(), vec![t(4, 2, 3, 4), t(4, 3, 3, 3)]);
        assert_eq!(enumerate_types(7).unwrap().len(), 6);
        assert!(enumerate_types(2).is_err());
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for d in 3..=40 {
            assert_eq!(enumerate_types(d).unwrap(), brute_force(d), "d = {d}");
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(count_closed_form(3).unwrap(), 1);
        assert_eq!(count_closed_form(7).unwrap(), 6);
        assert_eq!(count_closed_form(6).unwrap(), 4);
        assert_eq!(count_closed_form(9).unwrap(), 9);
        assert_eq!(count_polynomial(10).unwrap(), 4);
        assert_eq!(count_nonpolynomial(7).unwrap(), 3);
        assert_eq!(count_nonpolynomial(4).unwrap(), 1);
        assert!(count_nonpolynomial(3).is_err());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_type(&t(15, 13, 3, 15)), TypeClass::Polynomial { k: 2 });
        assert_eq!(classify_type(&t(5, 3, 5, 3)), TypeClass::Symmetric { k: 2 });
        assert_eq!(classify_type(&t(7, 4, 5, 6)), TypeClass::GeneralUnsupported);
        assert_eq!(classify_type(&t(3, 2, 3, 2)), TypeClass::Symmetric { k: 1 });
        assert_eq!(classify_type(&t(3, 2, 2, 3)), TypeClass::Polynomial { k: 1 });
    }

    #[test]
    fn classify_reports_relabeling() {
        let c = classify(&t(15, 15, 3, 13));
        assert_eq!(c.class, TypeClass::Polynomial { k: 2 });
        let pattern = c.pattern.unwrap();
        assert_eq!(pattern, t(15, 13, 3, 15));
        let e = [15, 3, 13];
        let p = pattern.indices();
        for i in 0..3 {
            assert_eq!(e[i], p[c.sigma[i]]);
        }
        assert!(!c.is_direct());
        let c = classify(&t(7, 7, 4, 4));
        assert_eq!(c.class, TypeClass::Polynomial { k: 3 });
        assert!(!c.is_direct());
        let c = classify(&t(7, 5, 5, 5));
        assert_eq!(c.class, TypeClass::Symmetric { k: 2 });
        assert!(c.is_direct());
        let c = classify(&t(9, 5, 5, 9));
        assert_eq!(c.class, TypeClass::Polynomial { k: 4 });
        assert!(c.is_direct());
        let c = classify(&t(9, 3, 8, 8));
        assert_eq!(c.class, TypeClass::Symmetric { k: 1 });
        assert_eq!(c.pattern.unwrap(), t(9, 8, 3, 8));
    }
}
