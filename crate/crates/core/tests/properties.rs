use belyi_core::combinatorics::{classify_type, enumerate_types, TypeClass};
use belyi_core::exact::roots::{is_root, rational_roots};
use belyi_core::exact::{
    wronskian, FactorConfig, Fp, FpPoly, Poly, PrimeModulus, ProjPoint, QMap, QPoint, QPoly, RationalMap, ZPoly,
};
use belyi_core::CombinatorialType;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn fp_poly(coeffs: &[u64], p: u64) -> FpPoly {
    let m = PrimeModulus::new(p).unwrap();
    Poly::new(coeffs.iter().map(|&c| Fp::new(c % p, m)).collect(), m)
}

/// Every monic polynomial of degree `1..=max_deg` over `F_p`.
fn monic_polys(p: u64, max_deg: usize) -> Vec<FpPoly> {
    let mut out = Vec::new();
    for deg in 1..=max_deg {
        let count = p.pow(deg as u32);
        for mut code in 0..count {
            let mut c = Vec::with_capacity(deg + 1);
            for _ in 0..deg {
                c.push(code % p);
                code /= p;
            }
            c.push(1);
            out.push(fp_poly(&c, p));
        }
    }
    out
}

fn divides(a: &FpPoly, b: &FpPoly) -> bool {
    b.div_rem(a).1.is_zero()
}

fn zpoly() -> impl Strategy<Value = ZPoly> {
    prop::collection::vec(-30i64..=30, 1..7).prop_map(|c| ZPoly::from_i64s(&c))
}

fn qpoly() -> impl Strategy<Value = QPoly> {
    prop::collection::vec((-9i64..=9, 1i64..=4), 1..5).prop_map(|c| {
        Poly::new(
            c.into_iter().map(|(n, d)| BigRational::new(n.into(), d.into())).collect(),
            (),
        )
    })
}

fn nonzero_qpoly() -> impl Strategy<Value = QPoly> {
    qpoly().prop_filter("nonzero", |p| !p.is_zero())
}

fn qmap() -> impl Strategy<Value = QMap> {
    (qpoly(), nonzero_qpoly())
        .prop_filter("nonconstant", |(n, d)| !(n.is_constant() && d.is_constant()))
        .prop_map(|(n, d)| RationalMap::new(n, d))
}

fn qpoint() -> impl Strategy<Value = QPoint> {
    prop_oneof![
        1 => Just(ProjPoint::Infinity),
        8 => (-12i64..=12, 1i64..=6).prop_map(|(n, d)| ProjPoint::Finite(BigRational::new(n.into(), d.into()))),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gcd_is_the_greatest_common_divisor(
        p in prop::sample::select(vec![2u64, 3]),
        a in prop::collection::vec(0u64..3, 1..7),
        b in prop::collection::vec(0u64..3, 1..7),
        c in prop::collection::vec(0u64..3, 1..4),
    ) {
        let c = fp_poly(&c, p);
        let a = &fp_poly(&a, p) * &c;
        let b = &fp_poly(&b, p) * &c;
        prop_assume!(!a.is_zero() && !b.is_zero());
        let g = a.gcd(&b);
        prop_assert!(divides(&g, &a) && divides(&g, &b));
        prop_assert_eq!(g.lead().map(|l| l.value()), Some(1));
        for h in monic_polys(p, 4) {
            if divides(&h, &a) && divides(&h, &b) {
                prop_assert!(divides(&h, &g), "{:?} divides both but not the gcd {:?}", h, g);
            }
        }
    }

    #[test]
    fn content_times_primitive_part(p in zpoly()) {
        prop_assume!(!p.is_zero());
        let c = p.content().unwrap();
        let q = p.primitive_part().unwrap();
        prop_assert!(c > BigInt::zero());
        prop_assert_eq!(q.scale(&c), p);
        prop_assert!(q.content().unwrap().is_one());
    }

    #[test]
    fn derivative_is_a_derivation(a in qpoly(), b in qpoly(), k in -5i64..=5) {
        let k = BigRational::from_integer(k.into());
        prop_assert_eq!((&a.scale(&k) + &b).derivative(), &a.derivative().scale(&k) + &b.derivative());
        prop_assert_eq!((&a * &b).derivative(), &(&a.derivative() * &b) + &(&a * &b.derivative()));
    }

    #[test]
    fn wronskian_is_alternating(a in zpoly(), b in zpoly()) {
        prop_assert_eq!(wronskian(&a, &b), -&wronskian(&b, &a));
        prop_assert!(wronskian(&a, &a).is_zero());
    }

    #[test]
    fn rational_roots_match_a_height_scan(
        factors in prop::collection::vec((-6i64..=6, 1i64..=6), 0..4),
        rest in prop::collection::vec(-4i64..=4, 1..4),
    ) {
        let mut p = ZPoly::from_i64s(&rest);
        prop_assume!(!p.is_zero());
        for (u, v) in &factors {
            p = &p * &ZPoly::from_i64s(&[-u, *v]);
        }
        let roots = rational_roots(&p, FactorConfig::default()).unwrap();
        for r in &roots {
            prop_assert!(is_root(&p, r));
        }
        for v in 1i64..=50 {
            for u in -50i64..=50 {
                if u.gcd(&v) != 1 {
                    continue;
                }
                let x = BigRational::new(u.into(), v.into());
                if is_root(&p, &x) {
                    prop_assert!(roots.contains(&x), "missed root {}", x);
                }
            }
        }
    }

    #[test]
    fn evaluation_respects_composition(f in qmap(), g in qmap(), x in qpoint()) {
        let fg = f.compose(&g);
        prop_assert_eq!(fg.eval(&x), f.eval(&g.eval(&x)));
    }
}

#[test]
fn classification_shapes() {
    for d in 3..=60 {
        for sorted in enumerate_types(d).unwrap() {
            for t in sorted.orderings() {
                let e = t.indices();
                match classify_type(&t) {
                    TypeClass::Polynomial { k } => {
                        assert!(e.contains(&d), "{t}");
                        let mut s = e;
                        s.sort();
                        let mut want = [d - k, k + 1, d];
                        want.sort();
                        assert_eq!(s, want, "{t}");
                    }
                    TypeClass::Symmetric { k } => {
                        assert_eq!(e.iter().filter(|&&x| x == d - k).count() >= 2, true, "{t}");
                        assert!(e.contains(&(2 * k + 1)), "{t}");
                    }
                    TypeClass::GeneralUnsupported => {}
                }
            }
        }
    }
}

#[test]
fn counts_agree_on_a_wide_range() {
    use belyi_core::combinatorics::{count_closed_form, count_nonpolynomial, count_polynomial};
    for d in 4..=500 {
        let n = enumerate_types(d).unwrap().len() as u64;
        assert_eq!(n, count_closed_form(d).unwrap(), "d = {d}");
        assert_eq!(n, count_polynomial(d).unwrap() + count_nonpolynomial(d).unwrap(), "d = {d}");
    }
    assert!(CombinatorialType::new(3, 2, 2, 3).is_ok());
}
