use belyi_core::construction::{build_normalized, build_polynomial, BelyiMap};
use belyi_core::dynamics::{
    cycle_data, cycle_multiplier, functional_graph, preperiodic_set, rational_fixed_points, reduce_point,
    PreperOptions, PreperReport,
};
use belyi_core::exact::{FactorConfig, PrimeModulus};
use belyi_core::reduction::{reduce_belyi, ReductionType};
use belyi_core::{enumerate_types, CombinatorialType};

fn buildable(max_d: u64) -> Vec<BelyiMap> {
    let mut out = Vec::new();
    for d in 3..=max_d {
        for sorted in enumerate_types(d).unwrap() {
            for t in sorted.orderings() {
                if let Ok(f) = build_normalized(&t) {
                    out.push(f);
                }
            }
        }
    }
    out
}

const PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

#[test]
fn graph_successor_is_evaluation_and_multipliers_do_not_depend_on_the_start() {
    for f in buildable(12) {
        for p in PRIMES {
            let p = PrimeModulus::new(p).unwrap();
            let r = reduce_belyi(&f, p).unwrap();
            let g = functional_graph(&r.fbar);
            for i in 0..g.len() {
                assert_eq!(g.point(g.successor(i)), r.fbar.eval(&g.point(i)));
            }
            for c in g.cycles() {
                let lambda = cycle_multiplier(&r.fbar, &g, c);
                for s in 1..c.len() {
                    let mut rotated = c.clone();
                    rotated.rotate_left(s);
                    assert_eq!(cycle_multiplier(&r.fbar, &g, &rotated), lambda);
                }
            }
        }
    }
}

#[test]
fn monomial_reductions_mod_2_and_3_are_fixed_and_critical() {
    let mut seen = 0;
    for f in buildable(24) {
        for p in [2, 3] {
            let r = reduce_belyi(&f, PrimeModulus::new(p).unwrap()).unwrap();
            if !r.is_monomial {
                continue;
            }
            seen += 1;
            let g = functional_graph(&r.fbar);
            for c in cycle_data(&r.fbar, &g) {
                assert_eq!(c.length, 1, "{} mod {p}", f.ctype());
                assert_eq!(c.multiplier.value(), 0, "{} mod {p}", f.ctype());
            }
        }
    }
    assert!(seen > 50);
}

fn assert_forward_closed(f: &BelyiMap, r: &PreperReport) {
    let n = r.preperiodic.len();
    for x in &r.preperiodic {
        assert!(r.preperiodic.contains(&f.map().eval(x)));
        let mut y = x.clone();
        let mut reached = r.fixed_points.contains(&y);
        for _ in 0..n {
            y = f.map().eval(&y);
            reached |= r.fixed_points.contains(&y);
        }
        assert!(reached, "{x} never reaches a fixed point");
    }
}

#[test]
fn preperiodic_sets_are_forward_closed() {
    for f in buildable(9) {
        let opts = PreperOptions { override_hypothesis: true, ..Default::default() };
        let r = preperiodic_set(&f, opts).unwrap();
        assert_forward_closed(&f, &r);
    }
}

#[test]
fn fixed_points_reduce_to_fixed_points() {
    for f in buildable(10) {
        let fixed = rational_fixed_points(&f, FactorConfig::default()).unwrap();
        for p in PRIMES {
            let p = PrimeModulus::new(p).unwrap();
            let r = reduce_belyi(&f, p).unwrap();
            if r.classification == ReductionType::Bad {
                continue;
            }
            for x in &fixed {
                let xb = reduce_point(x, p);
                assert_eq!(r.fbar.eval(&xb), xb, "{} mod {p} at {x}", f.ctype());
            }
        }
    }
}

#[test]
fn polynomial_family_with_two_adic_room_has_only_trivial_fixed_points() {
    for d in (4u64..=32).step_by(2) {
        let nu = d.trailing_zeros();
        for k in 1..=d - 2 {
            if k + 1 > 1 << nu {
                continue;
            }
            let f = build_polynomial(d, k).unwrap();
            let fixed = rational_fixed_points(&f, FactorConfig::default()).unwrap();
            assert_eq!(fixed.len(), 3, "d = {d}, k = {k}");
        }
    }
    let t = CombinatorialType::new(8, 5, 4, 8).unwrap();
    assert_eq!(rational_fixed_points(&build_normalized(&t).unwrap(), FactorConfig::default()).unwrap().len(), 3);
}
