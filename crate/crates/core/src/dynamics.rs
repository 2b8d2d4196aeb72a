//! Dynamics: functional graphs over prime fields, cycle multipliers and
//! period constraints, and rational preperiodic points over `Q`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::combinatorics::CombinatorialType;
use crate::construction::BelyiMap;
use crate::error::{Error, Result};
use crate::exact::factor::{binomial, is_prime_u64, valuation};
use crate::exact::roots::rational_roots;
use crate::exact::{FactorConfig, Field, Fp, FpMap, FpPoint, PrimeModulus, ProjPoint, QMap, QPoint, QPoly, Ring};
use crate::reduction::{reduce_belyi, ReductionType};
use crate::serial;

/// `f` on `P^1(F_p)`. Vertex `i < p` is the residue `i`; vertex `p` is `∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionalGraph {
    p: PrimeModulus,
    successor: Vec<usize>,
    cycles: Vec<Vec<usize>>,
    tail_depth: Vec<usize>,
}

impl FunctionalGraph {
    pub fn p(&self) -> PrimeModulus {
        self.p
    }

    pub fn len(&self) -> usize {
        self.successor.len()
    }

    pub fn is_empty(&self) -> bool {
        self.successor.is_empty()
    }

    pub fn infinity(&self) -> usize {
        self.p.get() as usize
    }

    pub fn point(&self, i: usize) -> FpPoint {
        if i == self.infinity() {
            FpPoint::Infinity
        } else {
            FpPoint::Finite(Fp::new(i as u64, self.p))
        }
    }

    pub fn index(&self, x: &FpPoint) -> usize {
        match x {
            FpPoint::Finite(v) => v.value() as usize,
            FpPoint::Infinity => self.infinity(),
        }
    }

    pub fn label(&self, i: usize) -> String {
        if i == self.infinity() {
            "inf".into()
        } else {
            i.to_string()
        }
    }

    pub fn successor(&self, i: usize) -> usize {
        self.successor[i]
    }

    pub fn successors(&self) -> &[usize] {
        &self.successor
    }

    /// Each cycle starts at its smallest vertex; cycles sorted by that vertex.
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    /// Steps from `i` to the first periodic vertex.
    pub fn tail_depth(&self, i: usize) -> usize {
        self.tail_depth[i]
    }
}

/// Adjacency-list encoding, `{"p": 5, "vertices": [...], "successor": [...]}`.
impl Serialize for FunctionalGraph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Adjacency {
            p: u64,
            vertices: Vec<String>,
            successor: Vec<usize>,
            cycles: Vec<Vec<usize>>,
            tail_depth: Vec<usize>,
        }
        Adjacency {
            p: self.p.get(),
            vertices: (0..self.len()).map(|i| self.label(i)).collect(),
            successor: self.successor.clone(),
            cycles: self.cycles.clone(),
            tail_depth: self.tail_depth.clone(),
        }
        .serialize(s)
    }
}

/// Builds the graph by projective evaluation at every point.
pub fn functional_graph(fbar: &FpMap) -> FunctionalGraph {
    let p = *fbar.num().ctx();
    let n = p.get() as usize + 1;
    let mut g = FunctionalGraph {
        p,
        successor: Vec::with_capacity(n),
        cycles: Vec::new(),
        tail_depth: vec![0; n],
    };
    for i in 0..n {
        let image = fbar.eval(&g.point(i));
        g.successor.push(g.index(&image));
    }

    // 0 = unseen, 1 = on the current walk, 2 = finished.
    let mut state = vec![0u8; n];
    let mut on_cycle = vec![false; n];
    for start in 0..n {
        let mut path = Vec::new();
        let mut v = start;
        while state[v] == 0 {
            state[v] = 1;
            path.push(v);
            v = g.successor[v];
        }
        if state[v] == 1 {
            let pos = path.iter().position(|&u| u == v).expect("on path");
            let mut cycle = path[pos..].to_vec();
            let min = cycle.iter().enumerate().min_by_key(|(_, &u)| u).map(|(i, _)| i).unwrap();
            cycle.rotate_left(min);
            for &u in &cycle {
                on_cycle[u] = true;
            }
            g.cycles.push(cycle);
        }
        for &u in &path {
            state[u] = 2;
        }
    }
    g.cycles.sort();

    let mut known = on_cycle.clone();
    for start in 0..n {
        let mut path = Vec::new();
        let mut v = start;
        while !known[v] {
            path.push(v);
            v = g.successor[v];
        }
        let mut depth = g.tail_depth[v];
        for &u in path.iter().rev() {
            depth += 1;
            g.tail_depth[u] = depth;
            known[u] = true;
        }
    }
    g
}

/// Order of a multiplier in `F_p^*`, or infinite when it is zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MultiplierOrder {
    Finite(u64),
    Infinite,
}

impl Serialize for MultiplierOrder {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            MultiplierOrder::Finite(r) => s.serialize_u64(*r),
            MultiplierOrder::Infinite => s.serialize_str("inf"),
        }
    }
}

impl MultiplierOrder {
    pub fn of(lambda: Fp) -> Self {
        lambda.multiplicative_order().map_or(MultiplierOrder::Infinite, MultiplierOrder::Finite)
    }
}

/// A cycle of the reduced map with its multiplier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleData {
    pub vertices: Vec<usize>,
    pub length: usize,
    #[serde(serialize_with = "fp_value")]
    pub multiplier: Fp,
    pub multiplier_order: MultiplierOrder,
}

fn fp_value<S: Serializer>(v: &Fp, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u64(v.value())
}

/// Product of local derivatives around the cycle (chain rule; `1/x` is the
/// chart at infinity).
pub fn cycle_multiplier(fbar: &FpMap, graph: &FunctionalGraph, cycle: &[usize]) -> Fp {
    let p = graph.p();
    cycle
        .iter()
        .fold(Fp::one_in(&p), |acc, &v| acc.mul(&fbar.local_derivative(&graph.point(v))))
}

/// Every cycle with length, multiplier and multiplier order.
pub fn cycle_data(fbar: &FpMap, graph: &FunctionalGraph) -> Vec<CycleData> {
    graph
        .cycles()
        .iter()
        .map(|c| {
            let lambda = cycle_multiplier(fbar, graph, c);
            CycleData {
                vertices: c.clone(),
                length: c.len(),
                multiplier: lambda,
                multiplier_order: MultiplierOrder::of(lambda),
            }
        })
        .collect()
}

/// Exact periods compatible with one cycle of the reduction:
/// `{m}`, `{m r}` and `{m r p^e : e >= 1}`; only `{m}` when `r` is infinite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodSet {
    pub p: u64,
    pub m: u64,
    pub r: MultiplierOrder,
    pub finite: BTreeSet<u64>,
    /// `Some(m r)` when the family `m r p^e` is allowed.
    pub tail_base: Option<u64>,
}

impl PeriodSet {
    pub fn new(p: u64, m: u64, r: MultiplierOrder) -> Self {
        match r {
            MultiplierOrder::Infinite => Self {
                p,
                m,
                r,
                finite: BTreeSet::from([m]),
                tail_base: None,
            },
            MultiplierOrder::Finite(r_) => Self {
                p,
                m,
                r,
                finite: BTreeSet::from([m, m * r_]),
                tail_base: Some(m * r_),
            },
        }
    }

    pub fn contains(&self, n: u64) -> bool {
        if self.finite.contains(&n) {
            return true;
        }
        match self.tail_base {
            Some(b) if n > b && n % b == 0 => {
                let q = n / b;
                q.is_power_of_prime(self.p)
            }
            _ => false,
        }
    }

    pub fn describe(&self) -> String {
        match self.tail_base {
            None => format!("{{{}}}", self.m),
            Some(b) => format!("{{{}}} ∪ {{{b}}} ∪ {{{b} * {}^e : e >= 1}}", self.m, self.p),
        }
    }
}

trait PrimePower {
    fn is_power_of_prime(self, p: u64) -> bool;
}

impl PrimePower for u64 {
    fn is_power_of_prime(mut self, p: u64) -> bool {
        while self > 1 && self % p == 0 {
            self /= p;
        }
        self == 1
    }
}

/// Admissible periods per cycle at one prime of good reduction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AllowedPeriods {
    pub p: u64,
    pub cycles: Vec<CycleData>,
    pub sets: Vec<PeriodSet>,
}

impl AllowedPeriods {
    /// `n` is admissible for some cycle.
    pub fn allows(&self, n: u64) -> bool {
        self.sets.iter().any(|s| s.contains(n))
    }
}

/// Period constraints from the reduction at a prime of good reduction.
pub fn allowed_periods(f: &BelyiMap, p: PrimeModulus) -> Result<AllowedPeriods> {
    let r = reduce_belyi(f, p)?;
    if r.classification == ReductionType::Bad {
        return Err(Error::TheoremInapplicable(format!(
            "{} has bad reduction at {p}",
            f.ctype()
        )));
    }
    let g = functional_graph(&r.fbar);
    let cycles = cycle_data(&r.fbar, &g);
    let sets = cycles
        .iter()
        .map(|c| PeriodSet::new(p.get(), c.length as u64, c.multiplier_order))
        .collect();
    Ok(AllowedPeriods { p: p.get(), cycles, sets })
}

/// Periods up to `bound` admissible at every prime given. A period must be
/// allowed by at least one cycle at each prime; `p`-power families are kept
/// whenever no prime excludes them.
pub fn admissible_periods(all: &[AllowedPeriods], bound: u64) -> Vec<u64> {
    (1..=bound).filter(|&n| all.iter().all(|a| a.allows(n))).collect()
}

/// Reduction of a rational point modulo `p`.
pub fn reduce_point(x: &QPoint, p: PrimeModulus) -> FpPoint {
    match x {
        ProjPoint::Infinity => FpPoint::Infinity,
        ProjPoint::Finite(r) => {
            let m = BigInt::from(p.get());
            let den = r.denom().mod_floor(&m);
            if Zero::is_zero(&den) {
                return FpPoint::Infinity;
            }
            let to_fp = |n: &BigInt| {
                let v: u64 = n.mod_floor(&m).try_into().expect("residue fits");
                Fp::new(v, p)
            };
            FpPoint::Finite(to_fp(r.numer()).div(&to_fp(&den)))
        }
    }
}

fn integer_roots(poly: &QPoly, config: FactorConfig) -> Result<Vec<BigRational>> {
    if poly.is_zero() {
        return Err(Error::ConstantMap);
    }
    let (z, _) = poly.clear_denominators();
    rational_roots(&z, config)
}

/// Rational roots of `num - x den`, plus `∞` when it is fixed.
pub fn map_fixed_points(f: &QMap, config: FactorConfig) -> Result<Vec<QPoint>> {
    let poly = f.num() - &(f.den() * &QPoly::x(()));
    let mut out: Vec<QPoint> = integer_roots(&poly, config)?.into_iter().map(ProjPoint::Finite).collect();
    if f.eval(&ProjPoint::Infinity).is_infinity() {
        out.push(ProjPoint::Infinity);
    }
    Ok(out)
}

/// Rational points of `f^{-1}(a)`.
pub fn map_preimages(f: &QMap, a: &QPoint, config: FactorConfig) -> Result<Vec<QPoint>> {
    let poly = match a {
        ProjPoint::Finite(a) => {
            let (u, v) = (a.numer().clone(), a.denom().clone());
            &f.num().scale(&BigRational::from_integer(v)) - &f.den().scale(&BigRational::from_integer(u))
        }
        ProjPoint::Infinity => f.den().clone(),
    };
    let mut out: Vec<QPoint> = integer_roots(&poly, config)?.into_iter().map(ProjPoint::Finite).collect();
    if &f.eval(&ProjPoint::Infinity) == a {
        out.push(ProjPoint::Infinity);
    }
    Ok(out)
}

pub fn rational_fixed_points(f: &BelyiMap, config: FactorConfig) -> Result<Vec<QPoint>> {
    map_fixed_points(f.map(), config)
}

pub fn rational_preimages(f: &BelyiMap, a: &QPoint, config: FactorConfig) -> Result<Vec<QPoint>> {
    map_preimages(f.map(), a, config)
}

/// Which hypothesis makes every rational periodic point fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum HypothesisCase {
    /// `2 | d` and `e2 <= 2^ell`, `ell = v_2(d)`.
    TwoDividesDegree { ell: u32 },
    /// `3 | d` and `e2 <= 3^ell`, `ell = v_3(d)`.
    ThreeDividesDegree { ell: u32 },
    /// `d = p^ell` (then `e2 <= d` always holds).
    PrimePowerDegree { p: u64, ell: u32 },
}

impl HypothesisCase {
    pub fn number(self) -> u8 {
        match self {
            HypothesisCase::TwoDividesDegree { .. } => 1,
            HypothesisCase::ThreeDividesDegree { .. } => 2,
            HypothesisCase::PrimePowerDegree { .. } => 3,
        }
    }
}

/// The first applicable case, if any.
pub fn hypothesis(t: &CombinatorialType) -> Option<HypothesisCase> {
    let cases: [(u64, fn(u32) -> HypothesisCase); 2] = [
        (2, |ell| HypothesisCase::TwoDividesDegree { ell }),
        (3, |ell| HypothesisCase::ThreeDividesDegree { ell }),
    ];
    for (q, case) in cases {
        if t.d % q == 0 {
            let ell = valuation(t.d, q);
            if t.e2 <= q.pow(ell) {
                return Some(case(ell));
            }
        }
    }
    let p = (2..=t.d).find(|q| t.d % q == 0).expect("d >= 2");
    if is_prime_u64(p) {
        let ell = valuation(t.d, p);
        if p.pow(ell) == t.d && t.e2 <= t.d {
            return Some(HypothesisCase::PrimePowerDegree { p, ell });
        }
    }
    None
}

/// Options for [`preperiodic_set`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PreperOptions {
    pub override_hypothesis: bool,
    pub level_cap: usize,
    pub factor: FactorConfig,
}

impl Default for PreperOptions {
    fn default() -> Self {
        Self {
            override_hypothesis: false,
            level_cap: 64,
            factor: FactorConfig::default(),
        }
    }
}

/// Rational fixed points and their full rational backward closure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreperReport {
    pub ctype: CombinatorialType,
    #[serde(with = "serial::points")]
    pub fixed_points: Vec<QPoint>,
    /// Sorted, with `∞` last.
    #[serde(with = "serial::points")]
    pub preperiodic: Vec<QPoint>,
    /// `(i, j)` with `f(preperiodic[i]) = preperiodic[j]`.
    pub edges: Vec<(usize, usize)>,
    pub hypothesis_used: Option<HypothesisCase>,
    /// `false` when the hypothesis gate was overridden: the set is then only
    /// the fixed points and their preimages, not certainly all of PrePer.
    pub rigorous: bool,
    /// Backward levels needed before the closure stabilized.
    pub levels: usize,
}

/// Fixed points, then breadth-first rational preimages until a level adds
/// nothing.
pub fn preperiodic_set(f: &BelyiMap, opts: PreperOptions) -> Result<PreperReport> {
    let t = *f.ctype();
    let hyp = hypothesis(&t);
    if hyp.is_none() && !opts.override_hypothesis {
        return Err(Error::HypothesisUnmet(t));
    }
    let fixed = rational_fixed_points(f, opts.factor)?;
    let mut set: BTreeSet<QPoint> = fixed.iter().cloned().collect();
    let mut frontier: Vec<QPoint> = fixed.clone();
    let mut levels = 0;
    while !frontier.is_empty() {
        if levels >= opts.level_cap {
            return Err(Error::LevelCapReached(opts.level_cap));
        }
        let mut next = Vec::new();
        for a in &frontier {
            for x in rational_preimages(f, a, opts.factor)? {
                if set.insert(x.clone()) {
                    next.push(x);
                }
            }
        }
        frontier = next;
        levels += 1;
    }
    let points: Vec<QPoint> = set.into_iter().collect();
    let index: BTreeMap<&QPoint, usize> = points.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let mut edges = Vec::with_capacity(points.len());
    for (i, x) in points.iter().enumerate() {
        let y = f.map().eval(x);
        let j = *index.get(&y).ok_or_else(|| {
            Error::InternalInconsistency(format!("closure is not forward-closed at {x}"))
        })?;
        edges.push((i, j));
    }
    Ok(PreperReport {
        ctype: t,
        fixed_points: fixed,
        preperiodic: points,
        edges,
        hypothesis_used: hyp,
        rigorous: hyp.is_some(),
        levels,
    })
}

/// Real and rational points of the fibers over 0 and 1 for the polynomial
/// family `(d; d-k, k+1, d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberAnalysis {
    pub d: u64,
    pub k: u64,
    /// 1: d, k even; 2: d odd, k even; 3: d even, k odd; 4: d, k odd.
    pub case: u8,
    /// A real `gamma > 1` in `f^{-1}(0)` exists (cases 3 and 4).
    pub real_gamma: bool,
    /// A real `beta < 0` in `f^{-1}(1)` exists (cases 1 and 4).
    pub real_beta: bool,
    #[serde(with = "serial::points")]
    pub zero_fiber: Vec<QPoint>,
    #[serde(with = "serial::points")]
    pub one_fiber: Vec<QPoint>,
    #[serde(with = "serial::opt_rational")]
    pub gamma: Option<BigRational>,
    #[serde(with = "serial::opt_rational")]
    pub beta: Option<BigRational>,
    /// `gamma = 1 + 1/c` with `c | C(d-1, k)`, when `gamma` is rational.
    pub gamma_divisor_ok: Option<bool>,
    /// `beta = -1/b` with `b | C(d-1, k)`, when `beta` is rational.
    pub beta_divisor_ok: Option<bool>,
}

/// Rational fibers over 0 and 1, and which parity case applies.
pub fn fiber_sign_analysis(f: &BelyiMap, config: FactorConfig) -> Result<FiberAnalysis> {
    let t = *f.ctype();
    if t.e3 != t.d || t.e1 + t.e2 != t.d + 1 || t.e2 < 2 {
        return Err(Error::Unsupported(t));
    }
    let (d, k) = (t.d, t.e2 - 1);
    let case = match (d % 2 == 0, k % 2 == 0) {
        (true, true) => 1,
        (false, true) => 2,
        (true, false) => 3,
        (false, false) => 4,
    };
    let zero = QPoint::Finite(BigRational::zero());
    let one = QPoint::Finite(BigRational::one());
    let zero_fiber: Vec<QPoint> = rational_preimages(f, &zero, config)?.into_iter().filter(|x| !x.is_infinity()).collect();
    let one_fiber: Vec<QPoint> = rational_preimages(f, &one, config)?.into_iter().filter(|x| !x.is_infinity()).collect();
    let b = binomial((d - 1) as i64, k as i64);
    let gamma = zero_fiber.iter().filter_map(|x| x.finite()).find(|x| **x > BigRational::one()).cloned();
    let beta = one_fiber.iter().filter_map(|x| x.finite()).find(|x| x.is_negative()).cloned();
    let gamma_divisor_ok = gamma.as_ref().map(|g| {
        let c = (g - BigRational::one()).recip();
        c.is_integer() && c.is_positive() && b.is_multiple_of(&c.to_integer())
    });
    let beta_divisor_ok = beta.as_ref().map(|x| {
        let c = -x.recip();
        c.is_integer() && c.is_positive() && b.is_multiple_of(&c.to_integer())
    });
    Ok(FiberAnalysis {
        d,
        k,
        case,
        real_gamma: case == 3 || case == 4,
        real_beta: case == 1 || case == 4,
        zero_fiber,
        one_fiber,
        gamma,
        beta,
        gamma_divisor_ok,
        beta_divisor_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{build_normalized, build_polynomial};
    use crate::exact::{Poly, RationalMap};

    fn pm(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn monomial(d: usize, p: u64) -> FpMap {
        RationalMap::polynomial(Poly::monomial(Fp::new(1, pm(p)), d))
    }

    fn q(n: i64, d: i64) -> QPoint {
        ProjPoint::Finite(BigRational::new(n.into(), d.into()))
    }

    fn t(d: u64, e1: u64, e2: u64, e3: u64) -> CombinatorialType {
        CombinatorialType::new(d, e1, e2, e3).unwrap()
    }

    #[test]
    fn graphs_of_monomials() {
        let g = functional_graph(&monomial(35, 5));
        assert_eq!(g.cycles(), &[vec![0], vec![1], vec![2, 3], vec![4], vec![5]]);
        let g = functional_graph(&monomial(35, 7));
        assert!(g.cycles().contains(&vec![2, 4]));
        let g = functional_graph(&monomial(6, 2));
        assert_eq!(g.cycles(), &[vec![0], vec![1], vec![2]]);
        assert!((0..g.len()).all(|i| g.tail_depth(i) == 0));
    }

    #[test]
    fn tail_depths() {
        // x^2 over F_5: 2 -> 4 -> 1, 3 -> 4.
        let g = functional_graph(&monomial(2, 5));
        assert_eq!(g.tail_depth(2), 2);
        assert_eq!(g.tail_depth(3), 2);
        assert_eq!(g.tail_depth(4), 1);
        assert_eq!(g.tail_depth(1), 0);
    }

    #[test]
    fn multipliers() {
        let f = monomial(15, 3);
        let g = functional_graph(&f);
        assert_eq!(cycle_multiplier(&f, &g, &[2]).value(), 0);
        let f = monomial(35, 5);
        let g = functional_graph(&f);
        assert_eq!(cycle_multiplier(&f, &g, &[2, 3]).value(), 0);
        let f = monomial(3, 5);
        let g = functional_graph(&f);
        assert_eq!(cycle_multiplier(&f, &g, &[1]).value(), 3);
        assert_eq!(MultiplierOrder::of(Fp::new(3, pm(5))), MultiplierOrder::Finite(4));
        assert_eq!(MultiplierOrder::of(Fp::new(0, pm(5))), MultiplierOrder::Infinite);
    }

    #[test]
    fn period_sets() {
        let s = PeriodSet::new(5, 2, MultiplierOrder::Finite(4));
        assert!(s.contains(2) && s.contains(8) && s.contains(40) && s.contains(200));
        assert!(!s.contains(16) && !s.contains(4));
        let s = PeriodSet::new(2, 1, MultiplierOrder::Infinite);
        assert_eq!(s.finite, BTreeSet::from([1]));
        assert!(!s.contains(2));
    }

    #[test]
    fn allowed_periods_examples() {
        let f = build_polynomial(4, 1).unwrap();
        let a = allowed_periods(&f, pm(2)).unwrap();
        assert_eq!(admissible_periods(&[a], 50), vec![1]);
        // (35; 34, 2, 35) reduces to x^35 mod 5, which has a 2-cycle.
        let f = build_polynomial(35, 1).unwrap();
        let a = allowed_periods(&f, pm(5)).unwrap();
        assert!(a.cycles.iter().any(|c| c.length == 2));
        assert!(a.allows(2));
        // (15; 14, 2, 15) is bad at 2.
        let f = build_polynomial(15, 1).unwrap();
        assert!(matches!(allowed_periods(&f, pm(2)), Err(Error::TheoremInapplicable(_))));
    }

    #[test]
    fn fixed_points_and_preimages() {
        let cfg = FactorConfig::default();
        let f3 = build_polynomial(3, 1).unwrap();
        assert_eq!(
            rational_fixed_points(&f3, cfg).unwrap(),
            vec![q(0, 1), q(1, 2), q(1, 1), QPoint::Infinity]
        );
        let f4 = build_normalized(&t(4, 3, 2, 4)).unwrap();
        assert_eq!(rational_fixed_points(&f4, cfg).unwrap(), vec![q(0, 1), q(1, 1), QPoint::Infinity]);
        let f8 = build_normalized(&t(8, 5, 4, 8)).unwrap();
        assert_eq!(rational_fixed_points(&f8, cfg).unwrap(), vec![q(0, 1), q(1, 1), QPoint::Infinity]);
        assert_eq!(rational_preimages(&f3, &q(0, 1), cfg).unwrap(), vec![q(0, 1), q(3, 2)]);
        assert_eq!(rational_preimages(&f3, &q(1, 1), cfg).unwrap(), vec![q(-1, 2), q(1, 1)]);
        assert_eq!(rational_preimages(&f4, &q(1, 1), cfg).unwrap(), vec![q(1, 1)]);
        assert_eq!(rational_preimages(&f4, &QPoint::Infinity, cfg).unwrap(), vec![QPoint::Infinity]);
    }

    #[test]
    fn preperiodic_sets() {
        let r = preperiodic_set(&build_polynomial(3, 1).unwrap(), PreperOptions::default()).unwrap();
        assert_eq!(
            r.preperiodic,
            vec![q(-1, 2), q(0, 1), q(1, 2), q(1, 1), q(3, 2), QPoint::Infinity]
        );
        assert_eq!(r.hypothesis_used, Some(HypothesisCase::ThreeDividesDegree { ell: 1 }));
        let r = preperiodic_set(&build_polynomial(4, 1).unwrap(), PreperOptions::default()).unwrap();
        assert_eq!(r.preperiodic, vec![q(0, 1), q(1, 1), q(4, 3), QPoint::Infinity]);
        let r = preperiodic_set(&build_polynomial(9, 1).unwrap(), PreperOptions::default()).unwrap();
        assert_eq!(r.preperiodic, vec![q(0, 1), q(1, 1), q(9, 8), QPoint::Infinity]);
        for (i, j) in &r.edges {
            assert_eq!(build_polynomial(9, 1).unwrap().map().eval(&r.preperiodic[*i]), r.preperiodic[*j]);
        }
    }

    #[test]
    fn hypothesis_gate() {
        let f = build_polynomial(35, 1).unwrap();
        assert!(matches!(
            preperiodic_set(&f, PreperOptions::default()),
            Err(Error::HypothesisUnmet(_))
        ));
        let opts = PreperOptions { override_hypothesis: true, ..Default::default() };
        let r = preperiodic_set(&f, opts).unwrap();
        assert!(!r.rigorous);
        assert_eq!(hypothesis(&t(6, 3, 4, 6)), None);
        assert_eq!(hypothesis(&t(6, 4, 3, 6)), Some(HypothesisCase::ThreeDividesDegree { ell: 1 }));
        assert_eq!(hypothesis(&t(12, 9, 4, 12)), Some(HypothesisCase::TwoDividesDegree { ell: 2 }));
        assert_eq!(hypothesis(&t(25, 12, 14, 25)), Some(HypothesisCase::PrimePowerDegree { p: 5, ell: 2 }));
    }

    #[test]
    fn level_cap_is_enforced() {
        let f = build_polynomial(3, 1).unwrap();
        let opts = PreperOptions { level_cap: 1, ..Default::default() };
        assert_eq!(preperiodic_set(&f, opts), Err(Error::LevelCapReached(1)));
    }

    #[test]
    fn fibers() {
        let cfg = FactorConfig::default();
        let a = fiber_sign_analysis(&build_polynomial(3, 1).unwrap(), cfg).unwrap();
        assert_eq!(a.case, 4);
        assert_eq!(a.beta, Some(BigRational::new((-1).into(), 2.into())));
        assert_eq!(a.gamma, Some(BigRational::new(3.into(), 2.into())));
        assert_eq!((a.beta_divisor_ok, a.gamma_divisor_ok), (Some(true), Some(true)));
        let a = fiber_sign_analysis(&build_polynomial(5, 2).unwrap(), cfg).unwrap();
        assert_eq!(a.case, 2);
        assert_eq!(a.zero_fiber, vec![q(0, 1)]);
        assert_eq!(a.one_fiber, vec![q(1, 1)]);
        let a = fiber_sign_analysis(&build_polynomial(4, 1).unwrap(), cfg).unwrap();
        assert_eq!(a.case, 3);
        assert_eq!(a.gamma, Some(BigRational::new(4.into(), 3.into())));
        assert!(fiber_sign_analysis(&build_normalized(&t(3, 2, 3, 2)).unwrap(), cfg).is_err());
    }

    #[test]
    fn points_reduce() {
        assert_eq!(reduce_point(&q(3, 2), pm(2)), FpPoint::Infinity);
        assert_eq!(reduce_point(&q(-1, 2), pm(5)), FpPoint::Finite(Fp::new(2, pm(5))));
    }
}
