use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use belyi_core::construction::build_polynomial;
use belyi_core::dynamics::{cycle_data, functional_graph, preperiodic_set, rational_fixed_points, PreperOptions};
use belyi_core::exact::{FactorConfig, PrimeModulus};
use belyi_core::reduction::reduce_belyi;

fn preper(c: &mut Criterion) {
    for d in [3u64, 16, 32] {
        let f = build_polynomial(d, 1).unwrap();
        c.bench_function(&format!("preperiodic_set ({d}; {}, 2, {d})", d - 1), |b| {
            b.iter(|| preperiodic_set(black_box(&f), PreperOptions::default()).unwrap())
        });
    }
    let f = build_polynomial(64, 31).unwrap();
    c.bench_function("rational_fixed_points (64; 33, 32, 64)", |b| {
        b.iter(|| rational_fixed_points(black_box(&f), FactorConfig::default()).unwrap())
    });
}

fn graphs(c: &mut Criterion) {
    let f = build_polynomial(35, 1).unwrap();
    for p in [5u64, 101, 1009] {
        let r = reduce_belyi(&f, PrimeModulus::new(p).unwrap()).unwrap();
        c.bench_function(&format!("functional graph + cycles mod {p}"), |b| {
            b.iter(|| {
                let g = functional_graph(black_box(&r.fbar));
                cycle_data(&r.fbar, &g)
            })
        });
    }
}

criterion_group!(benches, preper, graphs);
criterion_main!(benches);
