use std::collections::BTreeMap;

use bredon::{catalog_get, classify, enumerate_decompositions, rho_localize, smith_thom_report, ConstraintSet};
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn k3() -> ConstraintSet {
    ConstraintSet {
        betti_fixed: Some(vec![2, 0, 2]),
        has_fixed_point: true,
        connected: true,
        poincare_dual: true,
        ..ConstraintSet::new(2, vec![1, 0, 22, 0, 1])
    }
}

fn cubic() -> ConstraintSet {
    ConstraintSet {
        betti_fixed: Some(vec![2, 1, 1, 2]),
        has_fixed_point: true,
        connected: true,
        poincare_dual: true,
        forgetful_onto_degrees: Some(vec![4]),
        ..ConstraintSet::new(3, vec![1, 0, 1, 10, 1, 0, 1])
    }
}

fn unconstrained_threefold() -> ConstraintSet {
    ConstraintSet { poincare_dual: true, ..ConstraintSet::new(3, vec![1, 0, 2, 4, 2, 0, 1]) }
}

fn solve(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve");
    for (name, constraints) in [("k3", k3()), ("cubic", cubic()), ("threefold_no_fixed_data", unconstrained_threefold())] {
        group.bench_function(name, |b| b.iter(|| enumerate_decompositions(black_box(&constraints)).unwrap()));
    }
    group.finish();
}

fn invariants(c: &mut Criterion) {
    let params = BTreeMap::from([("n".to_owned(), 40)]);
    let module = catalog_get("projective_space", &params).unwrap().module;
    c.bench_function("classify_cp40", |b| b.iter(|| classify(black_box(&module))));
    c.bench_function("smith_thom_cp40", |b| b.iter(|| smith_thom_report(black_box(&module)).unwrap()));
    c.bench_function("fixed_cp40", |b| b.iter(|| rho_localize(black_box(&module))));
}

criterion_group!(benches, solve, invariants);
criterion_main!(benches);
