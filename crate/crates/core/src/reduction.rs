//! Reduction of integer models modulo primes, Frobenius decomposition,
//! generalized ramification, membership in `S_{C,p}`, and censuses.

use std::fmt;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::CombinatorialType;
use crate::construction::{build_normalized, BelyiMap};
use crate::error::{Error, Result};
use crate::exact::factor::{is_prime_u64, valuation};
use crate::exact::{wronskian, Fp, FpMap, FpPoint, FpPoly, Poly, PrimeModulus, RationalMap, Ring, ZPoly};
use crate::render::{render_fp_map, TermOrder};

/// Reduction type of a map of degree `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionType {
    GoodSeparable,
    GoodInseparable,
    Bad,
}

impl ReductionType {
    pub fn is_good(self) -> bool {
        self != ReductionType::Bad
    }
}

impl fmt::Display for ReductionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReductionType::GoodSeparable => "good separable",
            ReductionType::GoodInseparable => "good inseparable",
            ReductionType::Bad => "bad",
        })
    }
}

/// Base-point data of the reduced linear series: `g = gcd(f1bar, f2bar)`,
/// `delta = deg g`, `eps1 = ord_0 g`, `eps2 = ord_1 g`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseDivisor {
    pub eps1: u64,
    pub eps2: u64,
    pub delta: u64,
}

/// Everything recorded about the reduction of one integer model.
#[derive(Clone, Debug, PartialEq)]
pub struct ReductionReport {
    pub p: PrimeModulus,
    /// Degree of the integer model before reduction.
    pub d: u64,
    /// Reduced map with coprime parts and monic denominator.
    pub fbar: FpMap,
    pub deg_bar: u64,
    pub base: BaseDivisor,
    pub separable: bool,
    pub classification: ReductionType,
    /// `fbar = x^d` literally.
    pub is_monomial: bool,
}

impl ReductionReport {
    pub fn render(&self, order: TermOrder) -> String {
        render_fp_map(&self.fbar, order)
    }
}

/// `W(num, den) != 0`.
pub fn is_separable(psi: &FpMap) -> bool {
    !psi.wronskian().is_zero()
}

fn ord0(p: &FpPoly) -> u64 {
    p.x_valuation().unwrap_or(0) as u64
}

fn ord1(p: &FpPoly) -> u64 {
    if p.is_zero() {
        return 0;
    }
    p.root_multiplicity(&Fp::one_in(p.ctx())) as u64
}

/// Reduces `num / den` modulo `p`. General models are accepted: a constant
/// reduction is reported as bad, not as an error.
pub fn reduce_model(num: &ZPoly, den: &ZPoly, p: PrimeModulus) -> Result<ReductionReport> {
    let n = num.primitive_part()?;
    let m = den.primitive_part()?;
    let d = n.degree_or_zero().max(m.degree_or_zero()) as u64;
    let f1 = n.reduce_mod(p);
    let f2 = m.reduce_mod(p);
    let g = f1.gcd(&f2);
    let base = BaseDivisor {
        eps1: ord0(&g),
        eps2: ord1(&g),
        delta: g.degree_or_zero() as u64,
    };
    let h1 = f1.exact_div(&g).expect("gcd divides");
    let h2 = f2.exact_div(&g).expect("gcd divides");
    let fbar = RationalMap::from_coprime_parts(h1, h2).with_monic_den();
    let deg_bar = fbar.degree() as u64;
    let separable = is_separable(&fbar);
    let classification = match (deg_bar == d, separable) {
        (true, true) => ReductionType::GoodSeparable,
        (true, false) => ReductionType::GoodInseparable,
        (false, _) => ReductionType::Bad,
    };
    let is_monomial = fbar.den().degree() == Some(0)
        && fbar.num() == &Poly::monomial(Fp::one_in(&p), d as usize);
    Ok(ReductionReport {
        p,
        d,
        fbar,
        deg_bar,
        base,
        separable,
        classification,
        is_monomial,
    })
}

/// Reduction of a certified map, with the nonconstancy and fixed-point
/// statements checked. A failure here means the input was not what it
/// claimed to be.
pub fn reduce_belyi(f: &BelyiMap, p: PrimeModulus) -> Result<ReductionReport> {
    let model = f.model();
    if !num_traits::One::is_one(&model.scale) {
        return Err(Error::InternalInconsistency(format!(
            "integer model of {} has scale {} != 1",
            f.ctype(),
            model.scale
        )));
    }
    let r = reduce_model(&model.num, &model.den, p)?;
    let fail = |what: &str| {
        Err(Error::InternalInconsistency(format!(
            "reduction of {} mod {p}: {what}",
            f.ctype()
        )))
    };
    if r.fbar.is_constant() {
        return fail("constant reduction");
    }
    let zero = FpPoint::Finite(Fp::new(0, p));
    if r.fbar.eval(&zero) != zero {
        return fail("0 is not fixed");
    }
    if !r.fbar.eval(&FpPoint::Infinity).is_infinity() {
        return fail("infinity is not fixed");
    }
    match r.fbar.eval(&FpPoint::Finite(Fp::new(1, p))) {
        FpPoint::Infinity => return fail("1 maps to infinity"),
        FpPoint::Finite(v) if v.value() == 0 => return fail("1 maps to 0"),
        _ => {}
    }
    if r.base.eps1 + r.base.eps2 > r.base.delta {
        return fail("eps1 + eps2 > delta");
    }
    Ok(r)
}

/// Builds the normalized map of type `t` and reduces it.
pub fn reduce_type(t: &CombinatorialType, p: PrimeModulus) -> Result<ReductionReport> {
    reduce_belyi(&build_normalized(t)?, p)
}

/// `psi = separable_part ∘ x^(p^n)` with `separable_part` separable.
#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusDecomposition {
    pub n: u32,
    pub separable_part: FpMap,
}

/// Largest `n` with `p^n` dividing every exponent in both parts. Prime
/// field coefficients are fixed by Frobenius, so decimation is exact.
pub fn frobenius_decompose(psi: &FpMap) -> FrobeniusDecomposition {
    let p = psi.num().ctx().get();
    let g = psi
        .num()
        .support()
        .chain(psi.den().support())
        .fold(0u64, |acc, e| num_integer::gcd(acc, e as u64));
    if g == 0 {
        return FrobeniusDecomposition {
            n: 0,
            separable_part: psi.clone(),
        };
    }
    let n = valuation(g, p);
    let step = p.pow(n) as usize;
    FrobeniusDecomposition {
        n,
        separable_part: RationalMap::from_coprime_parts(psi.num().decimate(step), psi.den().decimate(step)),
    }
}

/// `ebar_i = p^n e'_i`, with `e'` the indices of the separable part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralizedRamification {
    pub n: u32,
    pub separable_indices: [u64; 3],
    pub indices: [u64; 3],
}

/// Generalized ramification indices at `0, 1, ∞`.
///
/// The separable part must fix `0` and `∞`, send `1` to some `mu` outside
/// `{0, ∞}`, and be unramified away from `0, 1, ∞`. A reduction fixes `1`
/// only up to that scalar, so `mu != 1` is allowed and the index at `1` is
/// `ord_1(num - mu den)`.
pub fn generalized_ramification(psi: &FpMap) -> Result<GeneralizedRamification> {
    let dec = frobenius_decompose(psi);
    let s = &dec.separable_part;
    let (a, b) = (s.num(), s.den());
    let m = *a.ctx();
    let not = |why: String| Err(Error::NotBelyiNormalized(why));
    if s.is_constant() {
        return not("constant map".into());
    }
    let w = wronskian(a, b);
    if w.is_zero() {
        return not("separable part has zero wronskian".into());
    }
    let zero = FpPoint::Finite(Fp::new(0, m));
    if s.eval(&zero) != zero {
        return not("0 is not fixed".into());
    }
    if !s.eval(&FpPoint::Infinity).is_infinity() {
        return not("infinity is not fixed".into());
    }
    let mu = match s.eval(&FpPoint::Finite(Fp::new(1, m))) {
        FpPoint::Finite(v) if v.value() != 0 => v,
        other => return not(format!("1 maps to {other}")),
    };
    // Ramification confined to 0, 1 (and ∞ by degrees).
    let one = Fp::new(1, m);
    let a0 = ord0(&w) as usize;
    let a1 = w.root_multiplicity(&one);
    let shape = &Poly::monomial(one, a0) * &Poly::linear_root(&one).pow(a1 as u32);
    match w.exact_div(&shape) {
        Some(q) if q.degree() == Some(0) => {}
        _ => return not("ramified away from 0, 1, infinity".into()),
    }
    let e1 = ord0(a) - ord0(b);
    let e2 = ord1(&(a - &b.scale(&mu)));
    let e3 = (a.degree_or_zero() - b.degree_or_zero()) as u64;
    let pn = m.get().pow(dec.n);
    let e = [e1, e2, e3];
    Ok(GeneralizedRamification {
        n: dec.n,
        separable_indices: e,
        indices: e.map(|x| x * pn),
    })
}

/// Exhaustive search of the box `0 <= eps1, eps2, delta <= d - deg psi` for
/// a witness of membership in `S_{C,p}`. `None` if there is none, or if the
/// generalized ramification indices are undefined.
pub fn in_s_cp(psi: &FpMap, t: &CombinatorialType) -> Option<BaseDivisor> {
    let dbar = psi.degree() as u64;
    if psi.is_constant() || dbar > t.d {
        return None;
    }
    let ebar = generalized_ramification(psi).ok()?.indices;
    let slack = t.d - dbar;
    for delta in 0..=slack {
        for eps1 in 0..=delta {
            for eps2 in 0..=(delta - eps1) {
                if ebar[0] + eps1 >= t.e1 && ebar[1] + eps2 >= t.e2 && ebar[2] + (slack - delta) >= t.e3 {
                    return Some(BaseDivisor { eps1, eps2, delta });
                }
            }
        }
    }
    None
}

/// Monomial reduction criterion: `p | d` and `e2 <= p^(v_p(d))`.
pub fn predict_monomial(t: &CombinatorialType, p: u64) -> bool {
    if t.d % p != 0 {
        return false;
    }
    t.e2 <= p.pow(valuation(t.d, p))
}

/// Primes for a census row set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeSelection {
    List(Vec<PrimeModulus>),
    /// The prime divisors of each type's degree.
    Dividing,
}

/// Prime divisors of `n`, ascending.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    (2..=n).filter(|&q| n % q == 0 && is_prime_u64(q)).collect()
}

/// One census line.
#[derive(Clone, Debug, PartialEq)]
pub struct CensusRow {
    pub ctype: CombinatorialType,
    pub p: PrimeModulus,
    pub predicted_monomial: bool,
    /// `Err` rows are skipped with the stated reason.
    pub outcome: std::result::Result<ReductionReport, String>,
}

/// The (type, prime) jobs in deterministic order.
pub fn census_jobs(types: &[CombinatorialType], primes: &PrimeSelection) -> Vec<(CombinatorialType, PrimeModulus)> {
    let mut jobs = Vec::new();
    for t in types {
        match primes {
            PrimeSelection::List(ps) => jobs.extend(ps.iter().map(|&p| (*t, p))),
            PrimeSelection::Dividing => jobs.extend(
                prime_divisors(t.d)
                    .into_iter()
                    .map(|p| (*t, PrimeModulus::new(p).expect("prime divisor"))),
            ),
        }
    }
    jobs
}

/// Reduces every job in parallel; rows come back in job order. Types
/// without a closed form become skipped rows; other failures abort.
pub fn census(jobs: &[(CombinatorialType, PrimeModulus)]) -> Result<Vec<CensusRow>> {
    jobs.par_iter()
        .map(|&(t, p)| {
            let outcome = match reduce_type(&t, p) {
                Ok(r) => Ok(r),
                Err(Error::Unsupported(_)) => Err("skipped: no closed form in scope".to_string()),
                Err(e) => return Err(e),
            };
            Ok(CensusRow {
                ctype: t,
                p,
                predicted_monomial: predict_monomial(&t, p.get()),
                outcome,
            })
        })
        .collect()
}

/// Serialized census line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub d: u64,
    pub e1: u64,
    pub e2: u64,
    pub e3: u64,
    pub p: u64,
    pub fbar: String,
    pub deg_bar: Option<u64>,
    pub eps1: Option<u64>,
    pub eps2: Option<u64>,
    pub delta: Option<u64>,
    pub classification: String,
    pub predicted_monomial: bool,
    pub actual_monomial: Option<bool>,
}

impl CensusRow {
    pub fn record(&self, order: TermOrder) -> CensusRecord {
        let t = self.ctype;
        let (fbar, deg_bar, base, classification, actual) = match &self.outcome {
            Ok(r) => (
                r.render(order),
                Some(r.deg_bar),
                Some(r.base),
                r.classification.to_string(),
                Some(r.is_monomial),
            ),
            Err(reason) => (String::new(), None, None, reason.clone(), None),
        };
        CensusRecord {
            d: t.d,
            e1: t.e1,
            e2: t.e2,
            e3: t.e3,
            p: self.p.get(),
            fbar,
            deg_bar,
            eps1: base.map(|b| b.eps1),
            eps2: base.map(|b| b.eps2),
            delta: base.map(|b| b.delta),
            classification,
            predicted_monomial: self.predicted_monomial,
            actual_monomial: actual,
        }
    }
}

/// Writes rows as CSV with a header line.
pub fn write_census_csv<W: Write>(rows: &[CensusRow], order: TermOrder, out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row.record(order))?;
    }
    w.flush()?;
    Ok(())
}

/// Types `(15; 16 - e2, e2, 15)` for `e2 = 2..=14`, and primes 2, 3, 5, 7.
pub fn degree_15_table_jobs() -> Vec<(CombinatorialType, PrimeModulus)> {
    let types: Vec<_> = (2..=14)
        .map(|e2| CombinatorialType::new(15, 16 - e2, e2, 15).expect("valid"))
        .collect();
    let primes = [2, 3, 5, 7].map(|p| PrimeModulus::new(p).expect("prime"));
    let mut jobs = Vec::new();
    for p in primes {
        jobs.extend(types.iter().map(|&t| (t, p)));
    }
    jobs
}
